use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::{to_unsigned, ShiftedGeometricTriple};
use crate::error::{Error, Result};
use crate::semigroup::Limits;

/// Positions `(x2, x3)` of the p-Apéry set of a shifted geometric triple
/// with `c > 0`; the element at a position is `x2*(a*b^(n+1) - c) +
/// x3*(a*b^(n+2) - c)`.
///
/// Layout for `w = b + 1`, `a1 = wq + r`:
///
/// - main block: `pw <= x2 < (p+1)w` for `0 <= x3 < q - p`
/// - row `x3 = q - p`: `pw <= x2 < pw + r`
/// - for `l = 1..=p`, a staircase of two rows:
///   `x3 = q-p+2l-1` with `(p-l)w + r <= x2 < (p-l+1)w`, then
///   `x3 = q-p+2l` with `(p-l)w <= x2 < (p-l)w + r`
///
/// That is `(q-p)w + r + p(w - r) + pr = a1` positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AperyGridTriple {
    p: u64,
    positions: Vec<(usize, usize)>,
    residue_unit: BigUint,
    t2: BigUint,
    t3: BigUint,
    a1: BigUint,
}

impl AperyGridTriple {
    pub(crate) fn build(t: &ShiftedGeometricTriple, p: u64) -> Result<Self> {
        let limits = Limits::default();
        let a1 = to_unsigned(&t.terms()[0]);
        let fits = |v: &BigUint| v.to_usize().filter(|&x| x <= limits.table_cap);
        fits(&a1).ok_or_else(|| Error::resource(&a1, limits.table_cap))?;
        let qr = t.qr();
        let q = fits(&qr.q).expect("q < a1");
        let r = fits(&qr.r).expect("r <= b < a1");
        let w = t.b().to_usize().expect("b < a1") + 1;
        let p = usize::try_from(p).expect("p <= q");

        let mut positions = Vec::with_capacity(q * w + r);
        for x3 in 0..q - p {
            positions.extend((p * w..(p + 1) * w).map(|x2| (x2, x3)));
        }
        positions.extend((p * w..p * w + r).map(|x2| (x2, q - p)));
        for l in 1..=p {
            let base = (p - l) * w;
            positions.extend((base + r..base + w).map(|x2| (x2, q - p + 2 * l - 1)));
            positions.extend((base..base + r).map(|x2| (x2, q - p + 2 * l)));
        }

        Ok(Self {
            p: p as u64,
            positions,
            residue_unit: t.residue_unit(),
            t2: to_unsigned(&t.terms()[1]),
            t3: to_unsigned(&t.terms()[2]),
            a1,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn positions(&self) -> &[(usize, usize)] {
        &self.positions
    }

    /// `(b - 1)c mod a1`: the second generator's residue, which steps along
    /// each row of the grid.
    pub fn residue_unit(&self) -> &BigUint {
        &self.residue_unit
    }

    pub fn value_at(&self, (x2, x3): (usize, usize)) -> BigUint {
        &self.t2 * x2 + &self.t3 * x3
    }

    pub fn values(&self) -> Vec<BigUint> {
        self.positions
            .iter()
            .map(|&pos| self.value_at(pos))
            .collect()
    }

    /// Values reordered by residue mod `a1`, directly comparable with
    /// [`crate::semigroup::AperyTable::entries`]. `None` if two positions
    /// share a residue.
    pub fn values_by_residue(&self) -> Option<Vec<BigUint>> {
        let a1 = self.a1.to_usize()?;
        let mut out: Vec<Option<BigUint>> = vec![None; a1];
        for v in self.values() {
            let j = (&v % &self.a1).to_usize()?;
            if out[j].replace(v).is_some() {
                return None;
            }
        }
        out.into_iter().collect()
    }

    pub fn max_position(&self) -> (usize, usize) {
        *self
            .positions
            .iter()
            .max_by_key(|&&pos| self.value_at(pos))
            .expect("grid is nonempty")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::semigroup::apery_set;

    fn triple(a: i64, b: i64, c: i64, n: u32) -> ShiftedGeometricTriple {
        ShiftedGeometricTriple::new(a, b, c, n).unwrap()
    }

    #[test]
    fn divisible_case_is_a_rectangle() {
        let g = triple(5, 2, 19, 3).apery_grid(0).unwrap();
        let mut expected: Vec<_> = (0..=6)
            .flat_map(|x3| (0..=2).map(move |x2| (x2, x3)))
            .collect();
        let mut got = g.positions().to_vec();
        expected.sort();
        got.sort();
        assert_eq!(got, expected);
        assert_eq!(g.values().iter().max().unwrap(), &BigUint::from(968u32));
    }

    #[test]
    fn remainder_row_and_max_position() {
        let g = triple(3, 2, 1, 2).apery_grid(0).unwrap();
        let mut got = g.positions().to_vec();
        got.sort();
        let mut expected: Vec<_> = (0..=2)
            .flat_map(|x3| (0..=2).map(move |x2| (x2, x3)))
            .collect();
        expected.extend([(0, 3), (1, 3)]);
        expected.sort();
        assert_eq!(got, expected);
        assert_eq!(g.max_position(), (1, 3));
    }

    #[test]
    fn grid_matches_generic_apery_set() {
        for (t, ps) in [
            (triple(5, 2, 19, 3), 0..=7u64),
            (triple(3, 2, 1, 2), 0..=3),
            (triple(2, 3, 5, 2), 0..=3),
        ] {
            for p in ps {
                let grid = t.apery_grid(p).unwrap();
                assert_eq!(
                    grid.positions().len(),
                    usize::try_from(&t.terms()[0]).unwrap()
                );
                let ape = apery_set(t.gens(), p).unwrap();
                assert_eq!(grid.values_by_residue().unwrap(), ape.entries(), "p = {p}");
            }
        }
    }

    #[test]
    fn residue_unit_is_the_second_generator_mod_a1() {
        let t = triple(5, 2, 19, 3);
        let g = t.apery_grid(0).unwrap();
        assert_eq!(g.residue_unit(), &BigUint::from(19u32)); // 61 mod 21
    }

    #[test]
    fn preconditions() {
        assert!(matches!(
            triple(5, 2, 19, 3).apery_grid(8),
            Err(Error::OutOfValidityRange { .. })
        ));
        assert!(matches!(
            triple(4, 3, -1, 1).apery_grid(0),
            Err(Error::Unsupported(_))
        ));
    }
}
