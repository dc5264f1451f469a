use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::semigroup::Limits;

/// Greatest common divisor of a nonempty list of positive integers.
pub fn gcd_of(values: &[BigUint]) -> Result<BigUint> {
    let (first, rest) = values
        .split_first()
        .ok_or_else(|| Error::InvalidInput("gcd of an empty list".into()))?;
    if values.iter().any(Zero::is_zero) {
        return Err(Error::InvalidInput("gcd arguments must be positive".into()));
    }
    Ok(rest.iter().fold(first.clone(), |acc, v| acc.gcd(v)))
}

/// Generators of a numerical semigroup: sorted, duplicate-free, every element
/// at least 2, gcd 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorTuple {
    gens: Vec<BigUint>,
}

impl GeneratorTuple {
    pub fn new<I, T>(values: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigUint>,
    {
        let mut gens: Vec<BigUint> = values.into_iter().map(Into::into).collect();
        if gens.is_empty() {
            return Err(Error::InvalidInput(
                "at least one generator is required".into(),
            ));
        }
        gens.sort();
        gens.dedup();
        if gens[0] < BigUint::from(2u32) {
            return Err(Error::InvalidInput(format!(
                "minimum generator is {}, must be at least 2",
                gens[0]
            )));
        }
        let g = gcd_of(&gens)?;
        if !g.is_one() {
            return Err(Error::GcdNotOne(g));
        }
        Ok(Self { gens })
    }

    pub fn gens(&self) -> &[BigUint] {
        &self.gens
    }

    /// The minimum generator, which indexes Apéry residues.
    pub fn a1(&self) -> &BigUint {
        &self.gens[0]
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Generators as machine integers, for table-driven algorithms. Every
    /// generator must fit under the table cap.
    pub(crate) fn as_usize(&self, limits: &Limits) -> Result<Vec<usize>> {
        self.gens
            .iter()
            .map(|g| match g.to_usize() {
                Some(v) if v <= limits.table_cap => Ok(v),
                _ => Err(Error::resource(g, limits.table_cap)),
            })
            .collect()
    }
}

impl fmt::Display for GeneratorTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}
