use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::semigroup::{GeneratorTuple, Limits};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Counts {
    Word(Vec<u64>),
    Wide(Vec<BigUint>),
}

/// Denumerants `d(m)` for every `0 <= m <= bound`.
///
/// Built by the coin-counting recurrence, one in-place pass per generator.
/// Counts start out as `u64` and the whole table is rebuilt with `BigUint`
/// entries the first time an addition would overflow, so values are always
/// exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenumerantTable {
    gens: GeneratorTuple,
    counts: Counts,
}

impl DenumerantTable {
    pub fn build(gens: &GeneratorTuple, bound: usize, limits: &Limits) -> Result<Self> {
        let len = bound
            .checked_add(1)
            .filter(|&len| len <= limits.table_cap)
            .ok_or_else(|| Error::resource(bound as u128 + 1, limits.table_cap))?;
        let small = small_gens(gens, bound);
        let counts = match word_counts(&small, len) {
            Some(c) => Counts::Word(c),
            None => Counts::Wide(wide_counts(&small, len)),
        };
        Ok(Self {
            gens: gens.clone(),
            counts,
        })
    }

    #[cfg(test)]
    pub(crate) fn build_wide(gens: &GeneratorTuple, bound: usize) -> Self {
        let small = small_gens(gens, bound);
        Self {
            gens: gens.clone(),
            counts: Counts::Wide(wide_counts(&small, bound + 1)),
        }
    }

    pub fn gens(&self) -> &GeneratorTuple {
        &self.gens
    }

    /// Largest `m` covered by the table.
    pub fn bound(&self) -> usize {
        self.len() - 1
    }

    pub fn len(&self) -> usize {
        match &self.counts {
            Counts::Word(c) => c.len(),
            Counts::Wide(c) => c.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Whether the table had to fall back to arbitrary-precision counts.
    pub fn is_wide(&self) -> bool {
        matches!(self.counts, Counts::Wide(_))
    }

    pub fn count(&self, m: usize) -> Option<BigUint> {
        match &self.counts {
            Counts::Word(c) => c.get(m).map(|&v| BigUint::from(v)),
            Counts::Wide(c) => c.get(m).cloned(),
        }
    }

    /// `d(m) > p`. Panics if `m` is past the bound.
    pub fn exceeds(&self, m: usize, p: u64) -> bool {
        match &self.counts {
            Counts::Word(c) => c[m] > p,
            Counts::Wide(c) => c[m] > BigUint::from(p),
        }
    }

    pub fn counts(&self) -> Vec<BigUint> {
        (0..self.len()).filter_map(|m| self.count(m)).collect()
    }
}

fn small_gens(gens: &GeneratorTuple, bound: usize) -> Vec<usize> {
    gens.gens()
        .iter()
        .filter_map(|g| g.to_usize().filter(|&v| v <= bound))
        .collect()
}

fn word_counts(gens: &[usize], len: usize) -> Option<Vec<u64>> {
    let mut counts = vec![0u64; len];
    counts[0] = 1;
    for &g in gens {
        for m in g..len {
            counts[m] = counts[m].checked_add(counts[m - g])?;
        }
    }
    Some(counts)
}

fn wide_counts(gens: &[usize], len: usize) -> Vec<BigUint> {
    let mut counts = vec![BigUint::zero(); len];
    counts[0] = BigUint::from(1u32);
    for &g in gens {
        for m in g..len {
            let prev = counts[m - g].clone();
            counts[m] += prev;
        }
    }
    counts
}

/// Number of nonnegative solutions of `sum x_i * gens_i = m`.
pub fn denumerant(m: &BigUint, gens: &GeneratorTuple) -> Result<BigUint> {
    denumerant_with(m, gens, &Limits::default())
}

pub fn denumerant_with(m: &BigUint, gens: &GeneratorTuple, limits: &Limits) -> Result<BigUint> {
    let m = m
        .to_usize()
        .ok_or_else(|| Error::resource(m, limits.table_cap))?;
    let table = DenumerantTable::build(gens, m, limits)?;
    Ok(table.count(m).expect("m is within its own table"))
}

pub fn denumerant_table(gens: &GeneratorTuple, bound: usize) -> Result<DenumerantTable> {
    DenumerantTable::build(gens, bound, &Limits::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Exhaustive tuple enumeration, independent of the recurrence.
    fn brute(m: usize, gens: &[usize]) -> u64 {
        fn go(m: usize, gens: &[usize]) -> u64 {
            match gens.split_first() {
                None => u64::from(m == 0),
                Some((&g, rest)) => (0..=m / g).map(|x| go(m - x * g, rest)).sum(),
            }
        }
        go(m, gens)
    }

    fn tuple(v: &[u32]) -> GeneratorTuple {
        GeneratorTuple::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn small_examples() {
        let g = tuple(&[2, 3]);
        assert_eq!(denumerant(&0u32.into(), &g).unwrap(), 1u32.into());
        assert_eq!(denumerant(&6u32.into(), &g).unwrap(), 2u32.into());
        let g = tuple(&[21, 61, 141]);
        assert_eq!(denumerant(&947u32.into(), &g).unwrap(), 0u32.into());
    }

    #[test]
    fn table_examples() {
        let t = denumerant_table(&tuple(&[2, 3]), 7).unwrap();
        let expected: Vec<BigUint> = [1u32, 0, 1, 1, 1, 1, 2, 1].map(BigUint::from).to_vec();
        assert_eq!(t.counts(), expected);

        let t = denumerant_table(&tuple(&[21, 61, 141]), 20).unwrap();
        let c = t.counts();
        assert_eq!(c.len(), 21);
        assert_eq!(c[0], 1u32.into());
        assert!(c[1..].iter().all(Zero::is_zero));

        let t = denumerant_table(&tuple(&[2, 3]), 0).unwrap();
        assert_eq!(t.counts(), vec![BigUint::from(1u32)]);
    }

    #[test]
    fn table_matches_enumeration() {
        for gens in [&[2usize, 3][..], &[3, 5, 7], &[7, 9, 13], &[4, 6, 9, 11]] {
            let t = denumerant_table(
                &tuple(&gens.iter().map(|&g| g as u32).collect::<Vec<_>>()),
                60,
            )
            .unwrap();
            for m in 0..=60 {
                assert_eq!(
                    t.count(m).unwrap(),
                    BigUint::from(brute(m, gens)),
                    "m={m} gens={gens:?}"
                );
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let limits = Limits { table_cap: 100 };
        let err = DenumerantTable::build(&tuple(&[2, 3]), 100, &limits).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { .. }));
        assert!(DenumerantTable::build(&tuple(&[2, 3]), 99, &limits).is_ok());
    }

    #[test]
    fn wide_path_agrees_with_word_path() {
        let g = tuple(&[3, 4, 5]);
        let word = denumerant_table(&g, 500).unwrap();
        let wide = DenumerantTable::build_wide(&g, 500);
        assert!(!word.is_wide());
        assert!(wide.is_wide());
        assert_eq!(word.counts(), wide.counts());
        for m in 0..=500 {
            assert_eq!(word.exceeds(m, 7), wide.exceeds(m, 7));
        }
    }

    #[test]
    fn overflow_promotes_to_wide() {
        // Nineteen generators 2..=20: d(2000) is around 1e25, past u64.
        let g = tuple(&(2..=20).collect::<Vec<u32>>());
        let t = denumerant_table(&g, 2000).unwrap();
        assert!(t.is_wide());
        assert!(t.count(2000).unwrap() > BigUint::from(u64::MAX));
        assert_eq!(t, DenumerantTable::build_wide(&g, 2000));
        assert!(t.exceeds(2000, u64::MAX));
    }
}
