use resint::floquet::*;
use resint::matrix::Matrix;
use resint::spectral::eigenvalues;
use num_rational::BigRational;
use num_traits::Zero;

fn main() {
    let one = BigRational::from_integer(1.into());
    let sys = PeriodicLinearSystem {
        n: 2,
        period: Period::RationalPi(BigRational::from_integer(2.into())),
        entries: vec![
            TrigEntry::constant_only(BigRational::zero()),
            TrigEntry::constant_only(one.clone()),
            TrigEntry::constant_only(-one.clone()),
            TrigEntry::constant_only(BigRational::zero()),
        ],
    };
    let r = monodromy(&sys, 10_000, 1e-10, 50).unwrap();
    println!("M = {:?}", (r.monodromy[(0,0)], r.monodromy[(0,1)], r.monodromy[(1,0)], r.monodromy[(1,1)]));
    let s = eigenvalues(&Matrix::Numeric(r.monodromy.clone()));
    println!("spectrum {s}");
    println!("bound {} lattice {}", r.bound, r.lattice);
    println!("residuals {:?}", r.lattice.residuals);
}
