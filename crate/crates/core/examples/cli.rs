//! Drives the command-line front end in-process and prints what each
//! command writes.

fn main() {
    let commands: [&[&str]; 4] = [
        &["h2", "--algebra", "N_01"],
        &["identity", "--algebra", "zero", "--dim", "5", "--id", "zinbiel"],
        &["--format", "json", "fingerprint", "--algebra", "Z_38"],
        &["catalog", "list", "--tag", "one-parameter-family"],
    ];
    for args in commands {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = zinbiel::cli::run(
            std::iter::once("zinbiel").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        println!("$ zinbiel {}  (exit {code})", args.join(" "));
        print!("{}{}", String::from_utf8_lossy(&out), String::from_utf8_lossy(&err));
    }
}
