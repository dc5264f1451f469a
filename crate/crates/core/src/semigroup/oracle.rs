use num_bigint::{BigInt, BigUint};

use crate::error::{Error, Result};
use crate::semigroup::{AperyTable, DenumerantTable, GeneratorTuple, Limits};

/// Table-driven engine answering g_p, n_p and Apéry queries for one
/// generator tuple.
///
/// The denumerant table is shared across queries and doubled whenever a scan
/// runs off its end, so asking for several `p` on the same tuple costs about
/// as much as asking for the largest one.
#[derive(Debug, Clone)]
pub struct Oracle {
    gens: GeneratorTuple,
    a1: usize,
    limits: Limits,
    table: DenumerantTable,
}

impl Oracle {
    pub fn new(gens: &GeneratorTuple) -> Result<Self> {
        Self::with_limits(gens, Limits::default())
    }

    pub fn with_limits(gens: &GeneratorTuple, limits: Limits) -> Result<Self> {
        let small = gens.as_usize(&limits)?;
        let a1 = small[0];
        let largest = *small.last().expect("nonempty");
        let initial = largest
            .saturating_mul(4)
            .max(64)
            .min(limits.table_cap.saturating_sub(1));
        let table = DenumerantTable::build(gens, initial, &limits)?;
        Ok(Self {
            gens: gens.clone(),
            a1,
            limits,
            table,
        })
    }

    pub fn gens(&self) -> &GeneratorTuple {
        &self.gens
    }

    pub fn table(&self) -> &DenumerantTable {
        &self.table
    }

    fn grow(&mut self) -> Result<()> {
        let current = self.table.len();
        if current >= self.limits.table_cap {
            return Err(Error::resource(current as u128 * 2, self.limits.table_cap));
        }
        let next = current.saturating_mul(2).min(self.limits.table_cap);
        self.table = DenumerantTable::build(&self.gens, next - 1, &self.limits)?;
        Ok(())
    }

    fn ensure(&mut self, bound: usize) -> Result<()> {
        while self.table.bound() < bound {
            self.grow()?;
        }
        Ok(())
    }

    pub fn denumerant(&mut self, m: usize) -> Result<BigUint> {
        self.ensure(m)?;
        Ok(self.table.count(m).expect("ensured"))
    }

    /// Whether `m` has more than `p` representations.
    pub fn exceeds(&mut self, m: usize, p: u64) -> Result<bool> {
        self.ensure(m)?;
        Ok(self.table.exceeds(m, p))
    }

    pub fn apery(&mut self, p: u64) -> Result<AperyTable> {
        loop {
            let mut entries: Vec<Option<usize>> = vec![None; self.a1];
            let mut filled = 0;
            for m in 0..self.table.len() {
                let j = m % self.a1;
                if entries[j].is_none() && self.table.exceeds(m, p) {
                    entries[j] = Some(m);
                    filled += 1;
                    if filled == self.a1 {
                        break;
                    }
                }
            }
            if filled == self.a1 {
                let entries = entries
                    .into_iter()
                    .map(|e| BigUint::from(e.expect("all classes filled")))
                    .collect();
                return Ok(AperyTable::new(self.gens.clone(), p, entries));
            }
            self.grow()?;
        }
    }

    /// Start of the first run of `a1` consecutive integers that all have more
    /// than `p` representations. Adding `a1` never lowers a count, so every
    /// integer from here on has more than `p` representations too.
    pub fn stable_from(&mut self, p: u64) -> Result<usize> {
        loop {
            let mut run = 0;
            for m in 0..self.table.len() {
                if self.table.exceeds(m, p) {
                    run += 1;
                    if run == self.a1 {
                        return Ok(m + 1 - self.a1);
                    }
                } else {
                    run = 0;
                }
            }
            self.grow()?;
        }
    }

    /// g_p by forward scan: the integer just below the stable window.
    pub fn frobenius_scan(&mut self, p: u64) -> Result<BigInt> {
        let start = self.stable_from(p)?;
        Ok(BigInt::from(start) - 1)
    }

    /// n_p by direct count of `m >= 0` with at most `p` representations.
    pub fn sylvester_count(&mut self, p: u64) -> Result<BigUint> {
        let start = self.stable_from(p)?;
        let count = (0..start).filter(|&m| !self.table.exceeds(m, p)).count();
        Ok(BigUint::from(count))
    }

    /// Generators that are nonnegative combinations of the others. Such a
    /// generator has its trivial representation plus at least one more.
    pub fn redundant_generators(&mut self) -> Result<Vec<BigUint>> {
        let small = self.gens.as_usize(&self.limits)?;
        let mut out = Vec::new();
        for g in small {
            if self.exceeds(g, 1)? {
                out.push(BigUint::from(g));
            }
        }
        Ok(out)
    }
}

pub fn apery_set(gens: &GeneratorTuple, p: u64) -> Result<AperyTable> {
    Oracle::new(gens)?.apery(p)
}

pub fn p_frobenius_via_apery(gens: &GeneratorTuple, p: u64) -> Result<BigInt> {
    Ok(apery_set(gens, p)?.frobenius())
}

pub fn p_frobenius_scan(gens: &GeneratorTuple, p: u64) -> Result<BigInt> {
    Oracle::new(gens)?.frobenius_scan(p)
}

pub fn p_sylvester_via_apery(gens: &GeneratorTuple, p: u64) -> Result<BigUint> {
    apery_set(gens, p)?.sylvester()
}

pub fn p_sylvester_count(gens: &GeneratorTuple, p: u64) -> Result<BigUint> {
    Oracle::new(gens)?.sylvester_count(p)
}
