use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::semigroup::GeneratorTuple;

/// The p-Apéry set of a semigroup with respect to its minimum generator `a1`.
///
/// `entries[j]` is the least nonnegative integer congruent to `j` mod `a1`
/// with at least `p + 1` representations. For `j = 0` this is `0` when
/// `p = 0` and a positive multiple of `a1` otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AperyTable {
    gens: GeneratorTuple,
    p: u64,
    entries: Vec<BigUint>,
}

impl AperyTable {
    pub(crate) fn new(gens: GeneratorTuple, p: u64, entries: Vec<BigUint>) -> Self {
        debug_assert_eq!(BigUint::from(entries.len()), *gens.a1());
        Self { gens, p, entries }
    }

    pub fn gens(&self) -> &GeneratorTuple {
        &self.gens
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Entries indexed by residue class mod `a1`.
    pub fn entries(&self) -> &[BigUint] {
        &self.entries
    }

    pub fn max_entry(&self) -> &BigUint {
        self.entries.iter().max().expect("a1 >= 2 entries")
    }

    pub fn sum(&self) -> BigUint {
        self.entries.iter().sum()
    }

    /// `g_p = max_j m_j - a1`.
    pub fn frobenius(&self) -> BigInt {
        BigInt::from(self.max_entry().clone()) - BigInt::from(self.gens.a1().clone())
    }

    /// `n_p = (1/a1) * sum_j m_j - (a1 - 1)/2`, which must be an integer.
    pub fn sylvester(&self) -> Result<BigUint> {
        let a1 = self.gens.a1();
        let numerator = BigInt::from(self.sum() * 2u32) - BigInt::from(a1 * (a1 - 1u32));
        let denominator = BigInt::from(a1 * 2u32);
        let (q, rem) = numerator.div_rem(&denominator);
        if !rem.is_zero() || q < BigInt::zero() {
            return Err(Error::AssertionFailure(format!(
                "Apéry sum {} over a1 = {} gives a non-integral Sylvester number",
                self.sum(),
                a1
            )));
        }
        Ok(q.to_biguint().expect("checked nonnegative"))
    }
}
