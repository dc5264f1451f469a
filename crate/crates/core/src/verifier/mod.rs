//! Cross-checks the closed forms against the oracles over parameter grids.
//!
//! Every `(a, b, c, n)` tuple is independent, so sweeps fan out over
//! [`crate::exec::map_ordered`]; reports are assembled in enumeration order
//! and are identical whichever execution mode ran them.

mod report;

pub use report::{Failure, PointOutcome, PointRecord, Quantity, Summary, VerificationReport};

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exec::{map_ordered, Execution};
use crate::geometric::{
    two_generator_frobenius, NegativeShiftCase, ShiftedGeometricQuad, ShiftedGeometricTriple,
};
use crate::semigroup::{GeneratorTuple, Limits, Oracle};

/// Default oracle cost guard: tuples whose minimum generator exceeds this are
/// skipped.
pub const DEFAULT_COST_THRESHOLD: u64 = 20_000;

/// Inclusive integer interval, written `LO..HI`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntRange {
    pub lo: i64,
    pub hi: i64,
}

impl IntRange {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidInput(format!("empty range {lo}..{hi}")));
        }
        Ok(Self { lo, hi })
    }

    pub fn iter(self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

impl FromStr for IntRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("range {s:?} is not of the form LO..HI"));
        let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
        let lo = lo.trim().parse().map_err(|_| bad())?;
        let hi = hi.trim().parse().map_err(|_| bad())?;
        Self::new(lo, hi)
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Family {
    #[default]
    Triple,
    Quad,
}

/// Which `p` values to check per tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PPolicy {
    /// `0..=q` for triples, `0..=b-beta` for quads.
    #[default]
    TheoremRange,
    FixedMax(u64),
}

impl FromStr for PPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "theorem-range" | "theorem" => Ok(PPolicy::TheoremRange),
            _ => s
                .strip_prefix("max:")
                .unwrap_or(s)
                .parse()
                .map(PPolicy::FixedMax)
                .map_err(|_| {
                    Error::InvalidInput(format!(
                        "p policy {s:?}: expected `theorem-range` or a maximum p"
                    ))
                }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepSpec {
    pub family: Family,
    pub a_range: IntRange,
    pub b_range: IntRange,
    pub c_range: IntRange,
    pub n_range: IntRange,
    pub p_policy: PPolicy,
    pub sample_seed: u64,
    /// Maximum number of tuples; larger grids are subsampled with `sample_seed`.
    pub sample_limit: Option<usize>,
    pub cost_threshold: u64,
    pub limits: Limits,
}

impl SweepSpec {
    pub fn new(
        family: Family,
        a_range: IntRange,
        b_range: IntRange,
        c_range: IntRange,
        n_range: IntRange,
    ) -> Result<Self> {
        let spec = Self {
            family,
            a_range,
            b_range,
            c_range,
            n_range,
            p_policy: PPolicy::TheoremRange,
            sample_seed: 0,
            sample_limit: None,
            cost_threshold: DEFAULT_COST_THRESHOLD,
            limits: Limits::default(),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        for r in [self.a_range, self.b_range, self.c_range, self.n_range] {
            IntRange::new(r.lo, r.hi)?;
        }
        if self.a_range.lo < 1 {
            return Err(Error::InvalidInput("a must be >= 1".into()));
        }
        if self.b_range.lo < 2 {
            return Err(Error::InvalidInput("b must be >= 2".into()));
        }
        if self.c_range.lo == 0 && self.c_range.hi == 0 {
            return Err(Error::InvalidInput("c range contains only 0".into()));
        }
        if self.n_range.lo < 1 || self.n_range.hi > i64::from(u32::MAX) {
            return Err(Error::InvalidInput("n must be in 1..=u32::MAX".into()));
        }
        if self.sample_limit == Some(0) {
            return Err(Error::InvalidInput("sample limit must be positive".into()));
        }
        Ok(())
    }

    /// Parameter tuples in sweep order (`a` outermost, `n` innermost),
    /// skipping `c = 0`, then seeded subsampling if over the limit.
    pub fn tuples(&self) -> Vec<(i64, i64, i64, u32)> {
        let mut all = Vec::new();
        for a in self.a_range.iter() {
            for b in self.b_range.iter() {
                for c in self.c_range.iter().filter(|&c| c != 0) {
                    for n in self.n_range.iter() {
                        all.push((a, b, c, n as u32));
                    }
                }
            }
        }
        match self.sample_limit {
            Some(limit) if all.len() > limit => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.sample_seed);
                let mut picked = rand::seq::index::sample(&mut rng, all.len(), limit).into_vec();
                picked.sort_unstable();
                picked.into_iter().map(|i| all[i]).collect()
            }
            _ => all,
        }
    }
}

/// Parameters whose closed form can be checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Params {
    Triple(ShiftedGeometricTriple),
    Quad(ShiftedGeometricQuad),
    TwoGenerator(GeneratorTuple),
}

impl Params {
    pub fn build(family: Family, a: i64, b: i64, c: i64, n: u32) -> Result<Self> {
        Ok(match family {
            Family::Triple => Params::Triple(ShiftedGeometricTriple::new(a, b, c, n)?),
            Family::Quad => Params::Quad(ShiftedGeometricQuad::new(a, b, c, n)?),
        })
    }

    pub fn two_generator(a: u64, b: u64) -> Result<Self> {
        let gens = GeneratorTuple::new([a, b])?;
        if gens.len() != 2 {
            return Err(Error::InvalidInput(
                "two distinct generators required".into(),
            ));
        }
        Ok(Params::TwoGenerator(gens))
    }

    pub fn gens(&self) -> &GeneratorTuple {
        match self {
            Params::Triple(t) => t.gens(),
            Params::Quad(q) => q.gens(),
            Params::TwoGenerator(g) => g,
        }
    }

    /// The stated range of `p` for the closed form (`None`: unbounded).
    pub fn stated_range(&self) -> Option<BigInt> {
        match self {
            Params::Triple(t) => Some(BigInt::from(t.qr().q)),
            Params::Quad(q) => Some(q.frobenius_validity()),
            Params::TwoGenerator(_) => None,
        }
    }

    pub fn frobenius_closed(&self, p: u64) -> Result<BigInt> {
        match self {
            Params::Triple(t) => t.frobenius_closed(p),
            Params::Quad(q) => q.frobenius_closed(p),
            Params::TwoGenerator(g) => two_generator_frobenius(&g.gens()[0], &g.gens()[1], p),
        }
    }

    /// Closed-form expression without its range check.
    pub fn frobenius_formula(&self, p: u64) -> Result<BigInt> {
        match self {
            Params::Triple(t) => t.frobenius_formula(p),
            Params::Quad(q) => Ok(q.frobenius_formula(p)),
            Params::TwoGenerator(_) => self.frobenius_closed(p),
        }
    }

    pub fn sylvester_closed(&self, p: u64) -> Result<BigUint> {
        match self {
            Params::Triple(t) => t.sylvester_closed(p),
            _ => Err(Error::Unsupported(
                "closed-form n_p exists only for triples".into(),
            )),
        }
    }

    pub fn has_sylvester_closed_form(&self) -> bool {
        matches!(self, Params::Triple(t) if t.c().is_positive())
    }

    pub fn case(&self) -> Option<NegativeShiftCase> {
        match self {
            Params::Triple(t) if t.c().is_negative() => {
                t.negative_shift_case().ok().map(|s| s.case)
            }
            _ => None,
        }
    }

    fn labels(&self) -> [String; 4] {
        match self {
            Params::Triple(t) => [t.a(), t.b(), t.c()]
                .map(ToString::to_string)
                .into_iter()
                .chain([t.n().to_string()])
                .collect::<Vec<_>>()
                .try_into()
                .expect("four labels"),
            Params::Quad(q) => [q.a(), q.b(), q.c()]
                .map(ToString::to_string)
                .into_iter()
                .chain([q.n().to_string()])
                .collect::<Vec<_>>()
                .try_into()
                .expect("four labels"),
            Params::TwoGenerator(g) => [
                g.gens()[0].to_string(),
                g.gens()[1].to_string(),
                String::new(),
                String::new(),
            ],
        }
    }
}

/// Compares one closed-form value with its oracle, using a caller-held oracle
/// so several `p` share a table.
pub fn verify_point_with(
    params: &Params,
    p: u64,
    quantity: Quantity,
    oracle: &mut Oracle,
) -> Result<PointRecord> {
    let (closed, oracle_value) = match quantity {
        Quantity::Frobenius => (
            params.frobenius_closed(p),
            oracle.frobenius_scan(p)?.to_string(),
        ),
        Quantity::Sylvester => (
            params.sylvester_closed(p).map(BigInt::from),
            oracle.sylvester_count(p)?.to_string(),
        ),
    };
    let [a, b, c, n] = params.labels();
    let (closed, closed_error) = match closed {
        Ok(v) => (Some(v.to_string()), None),
        Err(e @ Error::ResourceLimit { .. }) => return Err(e),
        Err(e) => (None, Some(e.tag().to_string())),
    };
    let matched = closed.as_deref() == Some(oracle_value.as_str());
    Ok(PointRecord {
        a,
        b,
        c,
        n,
        p: p.to_string(),
        quantity,
        closed,
        closed_error,
        oracle: oracle_value,
        case: params.case().map(|c| c.to_string()),
        matched,
    })
}

pub fn verify_point(params: &Params, p: u64, quantity: Quantity) -> Result<PointRecord> {
    let mut oracle = Oracle::new(params.gens())?;
    verify_point_with(params, p, quantity, &mut oracle)
}

/// Largest `p <= p_max` such that the closed-form expression (evaluated
/// past its stated range) agrees with the oracle at every `p' <= p`.
/// `None` if it already disagrees at `p = 0` or no case applies.
pub fn discover_validity(params: &Params, p_max: u64) -> Result<Option<u64>> {
    discover_validity_with(params, p_max, Limits::default())
}

pub fn discover_validity_with(params: &Params, p_max: u64, limits: Limits) -> Result<Option<u64>> {
    let mut oracle = Oracle::with_limits(params.gens(), limits)?;
    let mut last = None;
    for p in 0..=p_max {
        let closed = match params.frobenius_formula(p) {
            Ok(v) => v,
            Err(Error::NoClosedFormCase) => break,
            Err(e) => return Err(e),
        };
        if closed != oracle.frobenius_scan(p)? {
            break;
        }
        last = Some(p);
    }
    Ok(last)
}

#[derive(Debug, Default)]
struct TupleOutcome {
    summary: Summary,
    points: Vec<PointRecord>,
    failures: Vec<Failure>,
}

fn evaluate_tuple(spec: &SweepSpec, (a, b, c, n): (i64, i64, i64, u32)) -> TupleOutcome {
    let mut out = TupleOutcome::default();
    let skip = |out: &mut TupleOutcome, field: fn(&mut Summary) -> &mut u64| {
        *field(&mut out.summary) += 1;
        out.summary.total += 1;
    };
    let params = match Params::build(spec.family, a, b, c, n) {
        Ok(p) => p,
        Err(Error::GcdNotOne(_)) => {
            skip(&mut out, |s| &mut s.skipped_gcd);
            return out;
        }
        Err(_) => {
            skip(&mut out, |s| &mut s.skipped_invalid);
            return out;
        }
    };
    if params.gens().a1() > &BigUint::from(spec.cost_threshold) {
        skip(&mut out, |s| &mut s.skipped_cost);
        return out;
    }

    let p_max = match spec.p_policy {
        PPolicy::FixedMax(m) => m,
        PPolicy::TheoremRange => params
            .stated_range()
            .and_then(|r| r.to_u64())
            .unwrap_or_default(),
    };
    let mut quantities = vec![Quantity::Frobenius];
    if params.has_sylvester_closed_form() {
        quantities.push(Quantity::Sylvester);
    }

    let mut oracle = Oracle::with_limits(params.gens(), spec.limits);
    for p in 0..=p_max {
        for &quantity in &quantities {
            let result = match oracle.as_mut() {
                Ok(o) => verify_point_with(&params, p, quantity, o),
                Err(e) => Err(e.clone()),
            };
            match result {
                Ok(record) => {
                    out.summary.count(record.outcome());
                    out.points.push(record);
                }
                Err(e) => {
                    let [a, b, c, n] = params.labels();
                    out.summary.oracle_errors += 1;
                    out.summary.total += 1;
                    out.failures.push(Failure {
                        a,
                        b,
                        c,
                        n,
                        p: p.to_string(),
                        quantity,
                        error: e.to_string(),
                    });
                }
            }
        }
    }
    out
}

/// Runs the sweep with the default execution mode.
pub fn verify_grid(spec: &SweepSpec) -> Result<VerificationReport> {
    verify_grid_with(spec, Execution::default())
}

pub fn verify_grid_with(spec: &SweepSpec, exec: Execution) -> Result<VerificationReport> {
    spec.validate()?;
    let tuples = spec.tuples();
    let outcomes = map_ordered(&tuples, exec, |&t| evaluate_tuple(spec, t));
    let mut report = VerificationReport::default();
    for o in outcomes {
        report.summary.absorb(&o.summary);
        report.points.extend(o.points);
        report.failures.extend(o.failures);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn range(lo: i64, hi: i64) -> IntRange {
        IntRange::new(lo, hi).unwrap()
    }

    #[test]
    fn range_parsing() {
        assert_eq!("1..3".parse::<IntRange>().unwrap(), range(1, 3));
        assert_eq!("-10..-1".parse::<IntRange>().unwrap(), range(-10, -1));
        assert_eq!("-10..10".parse::<IntRange>().unwrap(), range(-10, 10));
        assert!("3..1".parse::<IntRange>().is_err());
        assert!("1,3".parse::<IntRange>().is_err());
        assert!("a..3".parse::<IntRange>().is_err());
    }

    #[test]
    fn policy_parsing() {
        assert_eq!(
            "theorem-range".parse::<PPolicy>().unwrap(),
            PPolicy::TheoremRange
        );
        assert_eq!("5".parse::<PPolicy>().unwrap(), PPolicy::FixedMax(5));
        assert_eq!("max:3".parse::<PPolicy>().unwrap(), PPolicy::FixedMax(3));
        assert!("x".parse::<PPolicy>().is_err());
    }

    #[test]
    fn spec_validation() {
        let ok = SweepSpec::new(
            Family::Triple,
            range(1, 3),
            range(2, 3),
            range(1, 10),
            range(1, 2),
        );
        assert!(ok.is_ok());
        let bad_b = SweepSpec::new(
            Family::Triple,
            range(1, 3),
            range(1, 1),
            range(1, 10),
            range(1, 2),
        );
        assert!(matches!(bad_b, Err(Error::InvalidInput(_))));
        let zero_c = SweepSpec::new(
            Family::Triple,
            range(1, 3),
            range(2, 3),
            range(0, 0),
            range(1, 2),
        );
        assert!(zero_c.is_err());
    }

    #[test]
    fn point_examples() {
        let t = Params::build(Family::Triple, 5, 2, 19, 3).unwrap();
        let pt = verify_point(&t, 7, Quantity::Frobenius).unwrap();
        assert_eq!(pt.closed.as_deref(), Some("1934"));
        assert_eq!(pt.oracle, "1934");
        assert!(pt.matched);

        let q = Params::build(Family::Quad, 2, 3, 37, 3).unwrap();
        let pt = verify_point(&q, 3, Quantity::Frobenius).unwrap();
        assert_eq!(pt.closed, None);
        assert_eq!(pt.closed_error.as_deref(), Some("OutOfValidityRange"));
        assert_eq!(pt.oracle, "3075");
        assert_eq!(pt.outcome(), PointOutcome::OutOfRange);

        let t = Params::build(Family::Triple, 1, 3, -100, 1).unwrap();
        let pt = verify_point(&t, 0, Quantity::Frobenius).unwrap();
        assert_eq!(pt.closed_error.as_deref(), Some("NoClosedFormCase"));
        assert_eq!(pt.case.as_deref(), Some("none"));
        assert_eq!(pt.outcome(), PointOutcome::NoCase);
        assert!(!pt.oracle.is_empty());
    }

    #[test]
    fn validity_discovery() {
        let t = Params::build(Family::Triple, 5, 2, 19, 3).unwrap();
        assert!(discover_validity(&t, 10).unwrap().unwrap() >= 7);
        let q = Params::build(Family::Quad, 2, 3, 37, 3).unwrap();
        assert_eq!(discover_validity(&q, 5).unwrap(), Some(2));
        let two = Params::two_generator(2, 3).unwrap();
        assert_eq!(discover_validity(&two, 5).unwrap(), Some(5));
        let none = Params::build(Family::Triple, 1, 3, -100, 1).unwrap();
        assert_eq!(discover_validity(&none, 3).unwrap(), None);
    }

    #[test]
    fn all_gcd_skipped_is_vacuous_pass() {
        // a = 2, b = 2, c = 2: every term even.
        let spec = SweepSpec::new(
            Family::Triple,
            range(2, 2),
            range(2, 2),
            range(2, 2),
            range(1, 2),
        )
        .unwrap();
        let r = verify_grid(&spec).unwrap();
        assert_eq!(r.summary.total, 2);
        assert_eq!(r.summary.skipped_gcd, 2);
        assert!(r.points.is_empty());
        assert!(r.passed());
    }

    #[test]
    fn small_sweep_passes_and_is_consistent() {
        let spec = SweepSpec::new(
            Family::Triple,
            range(1, 3),
            range(2, 3),
            range(1, 10),
            range(1, 2),
        )
        .unwrap();
        let r = verify_grid(&spec).unwrap();
        assert!(r.passed(), "{:?}", r.mismatches().collect::<Vec<_>>());
        assert!(r.summary.is_consistent());
        assert!(r.summary.matched > 0);
    }

    #[test]
    fn sampling_is_seeded_and_ordered() {
        let mut spec = SweepSpec::new(
            Family::Triple,
            range(1, 3),
            range(2, 4),
            range(-10, 10),
            range(1, 2),
        )
        .unwrap();
        assert_eq!(spec.tuples().len(), 3 * 3 * 20 * 2);
        spec.sample_limit = Some(17);
        spec.sample_seed = 9;
        let first = spec.tuples();
        assert_eq!(first.len(), 17);
        assert_eq!(first, spec.tuples());
        let mut sorted = first.clone();
        sorted.sort();
        assert_eq!(first, sorted);
        spec.sample_seed = 10;
        assert_ne!(first, spec.tuples());
    }

    #[test]
    fn cost_guard_and_oracle_errors_are_counted() {
        // c = 2 makes every term even.
        let mut spec = SweepSpec::new(
            Family::Triple,
            range(3, 3),
            range(4, 4),
            range(1, 2),
            range(2, 2),
        )
        .unwrap();
        spec.cost_threshold = 10;
        let r = verify_grid(&spec).unwrap();
        assert_eq!(r.summary.skipped_cost, 1);
        assert_eq!(r.summary.skipped_gcd, 1);
        assert!(r.summary.is_consistent());

        spec.cost_threshold = DEFAULT_COST_THRESHOLD;
        spec.limits = Limits { table_cap: 300 };
        let r = verify_grid(&spec).unwrap();
        assert!(r.summary.oracle_errors > 0);
        assert_eq!(r.failures.len() as u64, r.summary.oracle_errors);
        assert!(r.summary.is_consistent());
    }
}
