//! Catalog loading, round trips, documented discrepancies and mutation
//! detection.

use std::path::Path;

use zinbiel::algebra::fingerprint;
use zinbiel::catalog::{parse_algebra, verify_all, BasisRow, Catalog, Check, Discrepancy, SuiteConfig};
use zinbiel::exactmath::{gq, gq_ratio, ExactMatrix, GaussianRational, Rational};

fn only(check: Check) -> SuiteConfig {
    SuiteConfig {
        checks: vec![check],
        ..SuiteConfig::default()
    }
}

#[test]
fn tables_round_trip() {
    let catalog = Catalog::shipped();
    let texts = catalog.to_texts().unwrap();
    let borrowed: Vec<&str> = texts.iter().map(|(_, t)| t.as_str()).collect();
    let again = Catalog::from_texts(borrowed.try_into().unwrap()).unwrap();
    assert_eq!(&again, catalog);

    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    assert_eq!(&Catalog::load_dir(&dir).unwrap(), catalog);
}

#[test]
fn inverse_parameters_are_isomorphic() {
    let catalog = Catalog::shipped();
    for alpha in [gq(2), gq(3), gq_ratio(1, 5)] {
        let inv = alpha.inv().unwrap();
        let a = catalog.get("Z_02", std::slice::from_ref(&alpha)).unwrap();
        let b = catalog.get("Z_02", std::slice::from_ref(&inv)).unwrap();
        // Swap e3 and e4, rescaling the new e3.
        let mut p = ExactMatrix::identity(5);
        p[(2, 2)] = gq(0);
        p[(3, 3)] = gq(0);
        p[(2, 3)] = inv.clone();
        p[(3, 2)] = gq(1);
        assert!(a.check_isomorphism(&b, &p).unwrap(), "alpha = {alpha}");
        assert_eq!(fingerprint(&a), fingerprint(&b));
    }
}

#[test]
fn algebra_files_use_the_table_format() {
    let text = r#"{
        "name": "toy",
        "dim": 3,
        "params": [{"symbol": "alpha", "domain": "alpha != 0"}],
        "entries": [
            {"i": 1, "j": 1, "k": 2, "c": "1"},
            {"i": 1, "j": 2, "k": 3, "c": "alpha"},
            {"i": 2, "j": 1, "k": 3, "c": "1/2+3/4*i"}
        ]
    }"#;
    let entry = parse_algebra(text).unwrap();
    assert_eq!(entry.id, "toy");
    let a = entry.instantiate(&[gq(5)]).unwrap();
    assert_eq!(a.get(0, 1, 2), &gq(5));
    assert_eq!(
        a.get(1, 0, 2),
        &GaussianRational::new(Rational::new(1, 2), Rational::new(3, 4))
    );
    assert!(entry.instantiate(&[]).is_err());
    assert!(parse_algebra(&text.replace("\"k\": 3", "\"k\": 4")).is_err());
}

#[test]
fn altered_certificate_is_caught() {
    let mut catalog = Catalog::shipped().clone();
    let rec = catalog
        .certificates
        .certificates
        .iter_mut()
        .find(|c| c.label == "Z_27 -> Z_28")
        .unwrap();
    rec.basis[0] = BasisRow::Combination("2*e2".into());
    let report = verify_all(&catalog, &only(Check::Certificates)).unwrap();
    let failing: Vec<&str> = report.checks[0].failures().map(|i| i.subject.as_str()).collect();
    assert_eq!(failing, ["Z_27 -> Z_28"]);
    assert!(!report.passed);
}

#[test]
fn stale_discrepancy_fails_the_check() {
    let mut catalog = Catalog::shipped().clone();
    catalog.discrepancies.discrepancies.push(Discrepancy {
        check: "square-dimensions".into(),
        subject: "Z_40".into(),
        printed: "4".into(),
        computed: "4".into(),
        reason: "no longer differs".into(),
    });
    let report = verify_all(&catalog, &only(Check::SquareDimensions)).unwrap();
    assert!(!report.passed, "{}", report.to_text());
    assert!(report.to_text().contains("Z_40"));
}

#[test]
fn undocumented_deviation_fails() {
    let mut catalog = Catalog::shipped().clone();
    catalog
        .discrepancies
        .discrepancies
        .retain(|d| d.check != "orbit-dimensions");
    let report = verify_all(&catalog, &only(Check::OrbitDimensions)).unwrap();
    let failing: Vec<&str> = report.checks[0].failures().map(|i| i.subject.as_str()).collect();
    assert_eq!(failing, ["Z_24"]);
}
