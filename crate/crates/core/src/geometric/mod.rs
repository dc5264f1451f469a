//! Closed forms for generators drawn from a shifted geometric sequence
//! `a*b^n - c, a*b^(n+1) - c, ...`, plus the two-generator law.
//!
//! All arithmetic is arbitrary precision. Closed-form evaluations outside the
//! range where they are known to hold return [`Error::OutOfValidityRange`];
//! falling back to an oracle is left to the caller.

mod grid;
mod quad;
mod triple;

pub use grid::AperyGridTriple;
pub use quad::{AbgDecomposition, ShiftedGeometricQuad};
pub use triple::{
    CaseQuantities, CaseSelection, NegativeShiftCase, QrDecomposition, ShiftedGeometricTriple,
};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{Error, Result};
use crate::semigroup::{gcd_of, GeneratorTuple};

/// Validated `(a, b, c, n)` and the first `count` terms `a*b^(n+i) - c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Shift {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub n: u32,
    pub terms: Vec<BigInt>,
    pub gens: GeneratorTuple,
}

impl Shift {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, n: u32, count: usize) -> Result<Self> {
        if a < BigInt::one() {
            return Err(Error::InvalidParameters(format!("a = {a}, must be >= 1")));
        }
        if b < BigInt::from(2) {
            return Err(Error::InvalidParameters(format!("b = {b}, must be >= 2")));
        }
        if c.is_zero() {
            return Err(Error::InvalidParameters("c must be nonzero".into()));
        }
        if n < 1 {
            return Err(Error::InvalidParameters("n must be >= 1".into()));
        }
        let terms: Vec<BigInt> = (0..count as u32)
            .map(|i| &a * Pow::pow(&b, n + i) - &c)
            .collect();
        if terms[0] < BigInt::from(2) {
            return Err(Error::InvalidParameters(format!(
                "smallest generator a*b^n - c = {} must be >= 2",
                terms[0]
            )));
        }
        let unsigned: Vec<BigUint> = terms.iter().map(to_unsigned).collect();
        let g = gcd_of(&unsigned)?;
        if !g.is_one() {
            return Err(Error::GcdNotOne(g));
        }
        let gens = GeneratorTuple::new(unsigned)?;
        Ok(Self {
            a,
            b,
            c,
            n,
            terms,
            gens,
        })
    }

    pub fn c0(&self) -> Option<BigInt> {
        self.c.is_negative().then(|| -&self.c)
    }
}

pub(crate) fn to_unsigned(v: &BigInt) -> BigUint {
    v.to_biguint().expect("value checked nonnegative")
}

pub(crate) fn check_range(p: u64, max: &BigInt) -> Result<()> {
    if BigInt::from(p) > *max {
        Err(Error::OutOfValidityRange {
            p,
            max: max.clone(),
        })
    } else {
        Ok(())
    }
}

/// `g_p(a, b) = (p + 1)ab - a - b` for coprime `a, b >= 2`. Holds for every `p`.
pub fn two_generator_frobenius(a: &BigUint, b: &BigUint, p: u64) -> Result<BigInt> {
    let two = BigUint::from(2u32);
    if *a < two || *b < two {
        return Err(Error::InvalidInput(format!(
            "generators {a}, {b} must both be >= 2"
        )));
    }
    let g = a.gcd(b);
    if !g.is_one() {
        return Err(Error::GcdNotOne(g));
    }
    let (a, b) = (
        BigInt::from_biguint(Sign::Plus, a.clone()),
        BigInt::from(b.clone()),
    );
    Ok(BigInt::from(p + 1) * &a * &b - a - b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::p_frobenius_scan;

    #[test]
    fn two_generator_examples() {
        let f = |a: u32, b: u32, p| two_generator_frobenius(&a.into(), &b.into(), p);
        assert_eq!(f(2, 3, 0).unwrap(), 1.into());
        assert_eq!(f(3, 5, 1).unwrap(), 22.into());
        assert_eq!(f(2, 3, 2).unwrap(), 13.into());
        let gens = GeneratorTuple::new([2u32, 3]).unwrap();
        assert_eq!(p_frobenius_scan(&gens, 2).unwrap(), f(2, 3, 2).unwrap());
        assert_eq!(f(4, 6, 0), Err(Error::GcdNotOne(2u32.into())));
        assert!(matches!(f(1, 6, 0), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn shift_validation() {
        let s = |a: i64, b: i64, c: i64, n| Shift::new(a.into(), b.into(), c.into(), n, 3);
        assert!(matches!(s(0, 2, 1, 1), Err(Error::InvalidParameters(_))));
        assert!(matches!(s(1, 1, 1, 1), Err(Error::InvalidParameters(_))));
        assert!(matches!(s(1, 2, 0, 1), Err(Error::InvalidParameters(_))));
        assert!(matches!(s(1, 2, 1, 0), Err(Error::InvalidParameters(_))));
        assert!(matches!(s(1, 2, 3, 1), Err(Error::InvalidParameters(_))));
        assert_eq!(s(2, 2, 2, 1), Err(Error::GcdNotOne(2u32.into())));
        assert_eq!(s(1, 2, -1, 1).unwrap().c0(), Some(1.into()));
    }
}
