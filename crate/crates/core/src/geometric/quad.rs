use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;

use super::{check_range, to_unsigned, Shift};
use crate::error::Result;
use crate::semigroup::GeneratorTuple;

/// `a*b^n - c = alpha(b^2+b+1) + beta(b+1) + gamma` with
/// `0 <= beta(b+1) + gamma <= b^2+b` and `0 <= gamma <= b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbgDecomposition {
    pub alpha: BigUint,
    pub beta: BigUint,
    pub gamma: BigUint,
}

/// The four consecutive terms `a*b^(n+i) - c`, `i = 0..4`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftedGeometricQuad {
    shift: Shift,
}

impl ShiftedGeometricQuad {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        n: u32,
    ) -> Result<Self> {
        Ok(Self {
            shift: Shift::new(a.into(), b.into(), c.into(), n, 4)?,
        })
    }

    pub fn a(&self) -> &BigInt {
        &self.shift.a
    }

    pub fn b(&self) -> &BigInt {
        &self.shift.b
    }

    pub fn c(&self) -> &BigInt {
        &self.shift.c
    }

    pub fn n(&self) -> u32 {
        self.shift.n
    }

    pub fn terms(&self) -> &[BigInt] {
        &self.shift.terms
    }

    pub fn gens(&self) -> &GeneratorTuple {
        &self.shift.gens
    }

    fn abg_signed(&self) -> (BigInt, BigInt, BigInt) {
        let b = &self.shift.b;
        let block = b * b + b + 1;
        let (alpha, rest) = self.shift.terms[0].div_mod_floor(&block);
        let (beta, gamma) = rest.div_mod_floor(&(b + 1));
        (alpha, beta, gamma)
    }

    pub fn abg(&self) -> AbgDecomposition {
        let (alpha, beta, gamma) = self.abg_signed();
        AbgDecomposition {
            alpha: to_unsigned(&alpha),
            beta: to_unsigned(&beta),
            gamma: to_unsigned(&gamma),
        }
    }

    /// `b - beta`, the last `p` covered by the closed form.
    pub fn frobenius_validity(&self) -> BigInt {
        let (_, beta, _) = self.abg_signed();
        &self.shift.b - beta
    }

    pub fn frobenius_closed(&self, p: u64) -> Result<BigInt> {
        check_range(p, &self.frobenius_validity())?;
        Ok(self.frobenius_formula(p))
    }

    /// The closed-form expression with no range check.
    pub fn frobenius_formula(&self, p: u64) -> BigInt {
        let t = &self.shift.terms;
        let b = &self.shift.b;
        let (alpha, beta, gamma) = self.abg_signed();
        let p = BigInt::from(p);
        if gamma.is_zero() {
            (b + beta + p) * &t[2] + (alpha - 1) * &t[3] - &t[0]
        } else {
            (gamma - 1) * &t[1] + (beta + p) * &t[2] + alpha * &t[3] - &t[0]
        }
    }
}
