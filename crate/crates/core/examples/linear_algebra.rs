//! Exact Gaussian-rational linear algebra: reduced row echelon form,
//! kernel, determinant and inverse.

use zinbiel::exactmath::{gq, ExactMatrix, GaussianRational};

fn main() -> zinbiel::Result<()> {
    let m = ExactMatrix::from_rows(vec![
        vec![gq(1), gq(2), GaussianRational::i(), gq(0)],
        vec![gq(2), gq(4), GaussianRational::new(0, 2), gq(1)],
        vec![gq(0), gq(0), gq(0), gq(3)],
    ])?;
    let r = m.rref();
    println!("rank {} with pivots {:?}", m.rank(), r.pivots);
    for v in m.kernel_basis() {
        println!("kernel vector {v:?}, image {:?}", m.apply(&v)?);
    }
    let q = ExactMatrix::from_rows(vec![
        vec![gq(2), GaussianRational::new(1, 1)],
        vec![GaussianRational::new(1, -1), gq(3)],
    ])?;
    println!("det {} inverse {:?}", q.det()?, q.inverse()?);
    Ok(())
}
