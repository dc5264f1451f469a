use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{check_range, to_unsigned, AperyGridTriple, Shift};
use crate::error::{Error, Result};
use crate::semigroup::GeneratorTuple;

/// `a*b^n - c = (b + 1)q + r` with `0 <= r <= b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QrDecomposition {
    pub q: BigUint,
    pub r: BigUint,
}

/// Which Apéry position holds the maximum when `c < 0`.
///
/// With `x = a*b^(n+1)` and `c0 = -c`:
///
/// | case | holds when | max position |
/// |------|------------|--------------|
/// | 1 | `(r-1)x >= c0*max(b-r, r-1)` | `(r-1, q+p)` |
/// | 2 | `(b-r)x >= (b-r)c0 > (r-1)x` | `(b, q+p-1)` |
/// | 3 | `(r-1)x >= (b-r)c0 > (b-r)x` | `(pb+r+p-1, q-p)` |
/// | 4 | `(b-r)c0 > x*max(b-r, r-1)` | `((p+1)b+p, q-p-1)` |
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NegativeShiftCase {
    Case1,
    Case2,
    Case3,
    Case4,
    NoCaseApplies,
}

impl NegativeShiftCase {
    pub fn id(self) -> Option<u8> {
        match self {
            Self::Case1 => Some(1),
            Self::Case2 => Some(2),
            Self::Case3 => Some(3),
            Self::Case4 => Some(4),
            Self::NoCaseApplies => None,
        }
    }
}

impl fmt::Display for NegativeShiftCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.id() {
            Some(id) => write!(f, "{id}"),
            None => f.write_str("none"),
        }
    }
}

/// The comparison quantities behind a [`NegativeShiftCase`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseQuantities {
    /// `(r-1) * a*b^(n+1)`
    pub r_minus_one_x: BigInt,
    /// `(b-r) * a*b^(n+1)`
    pub b_minus_r_x: BigInt,
    /// `(b-r) * c0`
    pub b_minus_r_c0: BigInt,
    /// `(r-1) * c0`
    pub r_minus_one_c0: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseSelection {
    pub case: NegativeShiftCase,
    pub quantities: CaseQuantities,
}

/// The triple `(a*b^n - c, a*b^(n+1) - c, a*b^(n+2) - c)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftedGeometricTriple {
    shift: Shift,
}

impl ShiftedGeometricTriple {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        n: u32,
    ) -> Result<Self> {
        Ok(Self {
            shift: Shift::new(a.into(), b.into(), c.into(), n, 3)?,
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

    /// `-c` when `c < 0`.
    pub fn c0(&self) -> Option<BigInt> {
        self.shift.c0()
    }

    /// The three generators as signed integers, ascending.
    pub fn terms(&self) -> &[BigInt] {
        &self.shift.terms
    }

    pub fn gens(&self) -> &GeneratorTuple {
        &self.shift.gens
    }

    fn qr_signed(&self) -> (BigInt, BigInt) {
        self.shift.terms[0].div_mod_floor(&(&self.shift.b + 1))
    }

    pub fn qr(&self) -> QrDecomposition {
        let (q, r) = self.qr_signed();
        QrDecomposition {
            q: to_unsigned(&q),
            r: to_unsigned(&r),
        }
    }

    /// Evaluates the four `c < 0` conditions verbatim (non-strict on the
    /// left, strict on the right) and returns the first that holds.
    pub fn negative_shift_case(&self) -> Result<CaseSelection> {
        let c0 = self.c0().ok_or_else(|| {
            Error::InvalidParameters("case selection applies only to c < 0".into())
        })?;
        let b = &self.shift.b;
        let (_, r) = self.qr_signed();
        let x = &self.shift.terms[1] - &c0; // a*b^(n+1)
        let rm1: BigInt = &r - 1u32;
        let bmr = b - &r;
        let quantities = CaseQuantities {
            r_minus_one_x: &rm1 * &x,
            b_minus_r_x: &bmr * &x,
            b_minus_r_c0: &bmr * &c0,
            r_minus_one_c0: &rm1 * &c0,
        };
        let CaseQuantities {
            r_minus_one_x: rx,
            b_minus_r_x: bx,
            b_minus_r_c0: bc,
            r_minus_one_c0: rc,
        } = &quantities;
        let case = if rx >= bc.max(rc) {
            NegativeShiftCase::Case1
        } else if bx >= bc && bc > rx {
            NegativeShiftCase::Case2
        } else if rx >= bc && bc > bx {
            NegativeShiftCase::Case3
        } else if *bc > (&x * bmr.clone().max(rm1.clone())) {
            NegativeShiftCase::Case4
        } else {
            NegativeShiftCase::NoCaseApplies
        };
        Ok(CaseSelection { case, quantities })
    }

    /// Largest `p` for which [`Self::frobenius_closed`] is valid.
    ///
    /// This is `q`, except in case 4 where the maximal position
    /// `((p+1)b+p, q-p-1)` leaves the grid at `p = q`, so the range ends at
    /// `q - 1`.
    ///
    /// Cases 3 and 4 can still disagree with the oracle inside this range when
    /// `-c` is large relative to `a*b^(n+1)`; check them with the verifier.
    pub fn frobenius_validity(&self) -> Result<BigInt> {
        let (q, _) = self.qr_signed();
        if self.shift.c.is_positive() {
            return Ok(q);
        }
        match self.negative_shift_case()?.case {
            NegativeShiftCase::NoCaseApplies => Err(Error::NoClosedFormCase),
            NegativeShiftCase::Case4 => Ok(q - 1),
            _ => Ok(q),
        }
    }

    /// Closed-form g_p for `0 <= p <= frobenius_validity()`.
    pub fn frobenius_closed(&self, p: u64) -> Result<BigInt> {
        check_range(p, &self.frobenius_validity()?)?;
        self.frobenius_formula(p)
    }

    /// The closed-form expression evaluated without the range check, for
    /// probing where it stops agreeing with the oracle.
    pub fn frobenius_formula(&self, p: u64) -> Result<BigInt> {
        let [t1, t2, t3] = [
            &self.shift.terms[0],
            &self.shift.terms[1],
            &self.shift.terms[2],
        ];
        let b = &self.shift.b;
        let (q, r) = self.qr_signed();
        let p = BigInt::from(p);
        // The coefficients of t2 and t3 for the maximal Apéry element.
        let (k2, k3) = if self.shift.c.is_positive() {
            if r.is_zero() {
                (b.clone(), &q + &p - 1)
            } else {
                (&r - 1, &q + &p)
            }
        } else {
            match self.negative_shift_case()?.case {
                NegativeShiftCase::Case1 => (&r - 1, &q + &p),
                NegativeShiftCase::Case2 => (b.clone(), &q + &p - 1),
                NegativeShiftCase::Case3 => (&p * b + &r + &p - 1, &q - &p),
                NegativeShiftCase::Case4 => ((&p + 1) * b + &p, &q - &p - 1),
                NegativeShiftCase::NoCaseApplies => return Err(Error::NoClosedFormCase),
            }
        };
        Ok(k2 * t2 + k3 * t3 - t1)
    }

    /// Closed-form n_p, for `c > 0` and `0 <= p <= q`.
    pub fn sylvester_closed(&self, p: u64) -> Result<BigUint> {
        if self.shift.c.is_negative() {
            return Err(Error::Unsupported(
                "no closed form for the p-Sylvester number when c < 0".into(),
            ));
        }
        let [t1, t2] = [&self.shift.terms[0], &self.shift.terms[1]];
        let b = &self.shift.b;
        let (q, _) = self.qr_signed();
        check_range(p, &q)?;
        let p = BigInt::from(p);
        let one = BigInt::one();
        let b1: BigInt = b + &one;
        let bracket: BigInt = (t1 - &one) * (t2 - &one) - b * &q * (t1 * 2u32 - &b1 * (&q + &one))
            + &b1 * &p * (t2 * 2u32 - b * (&p + &one));
        let (half, rem) = bracket.div_rem(&BigInt::from(2));
        if !rem.is_zero() || half.is_negative() {
            return Err(Error::AssertionFailure(format!(
                "p-Sylvester bracket {bracket} is not a nonnegative even integer"
            )));
        }
        Ok(to_unsigned(&half))
    }

    /// Positions `(x2, x3)` of the p-Apéry elements, for `c > 0`, `0 <= p <= q`.
    pub fn apery_grid(&self, p: u64) -> Result<AperyGridTriple> {
        if !self.shift.c.is_positive() {
            return Err(Error::Unsupported(
                "the Apéry grid layout is built for c > 0".into(),
            ));
        }
        let (q, _) = self.qr_signed();
        check_range(p, &q)?;
        AperyGridTriple::build(self, p)
    }

    pub(crate) fn residue_unit(&self) -> BigUint {
        let a1 = &self.shift.terms[0];
        let unit: BigInt = ((&self.shift.b - BigInt::one()) * &self.shift.c).mod_floor(a1);
        to_unsigned(&unit)
    }

    /// `(b+1)(a*b^(n+1) - c) = b(a*b^n - c) + (a*b^(n+2) - c)`.
    pub fn shift_identity_holds(&self) -> bool {
        let [t1, t2, t3] = [
            &self.shift.terms[0],
            &self.shift.terms[1],
            &self.shift.terms[2],
        ];
        let b = &self.shift.b;
        (b + BigInt::one()) * t2 == b * t1 + t3
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::Oracle;

    fn triple(a: i64, b: i64, c: i64, n: u32) -> ShiftedGeometricTriple {
        ShiftedGeometricTriple::new(a, b, c, n).unwrap()
    }

    fn gens_of(t: &ShiftedGeometricTriple) -> Vec<i64> {
        t.terms().iter().map(|v| v.try_into().unwrap()).collect()
    }

    #[test]
    fn construction() {
        assert_eq!(gens_of(&triple(5, 2, 19, 3)), [21, 61, 141]);
        assert_eq!(gens_of(&triple(4, 3, -1, 1)), [13, 37, 109]);
        assert_eq!(
            ShiftedGeometricTriple::new(2, 2, 2, 1),
            Err(Error::GcdNotOne(2u32.into()))
        );
    }

    #[test]
    fn qr_examples() {
        let qr = |t: ShiftedGeometricTriple| {
            let d = t.qr();
            (d.q, d.r)
        };
        assert_eq!(qr(triple(5, 2, 19, 3)), (7u32.into(), 0u32.into()));
        assert_eq!(qr(triple(4, 3, -1, 1)), (3u32.into(), 1u32.into()));
        assert_eq!(qr(triple(1, 2, -1, 1)), (1u32.into(), 0u32.into()));
    }

    #[test]
    fn case_selection_examples() {
        let case = |a, b, c, n| triple(a, b, c, n).negative_shift_case().unwrap().case;
        assert_eq!(case(4, 3, -1, 1), NegativeShiftCase::Case2);
        assert_eq!(case(1, 2, -5, 1), NegativeShiftCase::Case4);
        assert_eq!(case(1, 3, -100, 1), NegativeShiftCase::NoCaseApplies);

        let sel = triple(4, 3, -1, 1).negative_shift_case().unwrap();
        assert_eq!(sel.quantities.r_minus_one_x, 0.into());
        assert_eq!(sel.quantities.b_minus_r_x, 72.into());
        assert_eq!(sel.quantities.b_minus_r_c0, 2.into());

        assert!(matches!(
            triple(5, 2, 19, 3).negative_shift_case(),
            Err(Error::InvalidParameters(_))
        ));
    }

    #[test]
    fn r_zero_with_negative_c_reduces_to_cases_two_and_four() {
        // (1,2,-1,1): gens (3,5,9), r = 0, c0 = 1 <= x = 4.
        assert_eq!(
            triple(1, 2, -1, 1).negative_shift_case().unwrap().case,
            NegativeShiftCase::Case2
        );
        // (1,2,-7,1): gens (9,11,15), r = 0, c0 = 7 > x = 4.
        assert_eq!(
            triple(1, 2, -7, 1).negative_shift_case().unwrap().case,
            NegativeShiftCase::Case4
        );
    }

    #[test]
    fn frobenius_examples() {
        assert_eq!(
            triple(5, 2, 19, 3).frobenius_closed(3).unwrap(),
            1370.into()
        );
        assert_eq!(triple(4, 3, -1, 1).frobenius_closed(0).unwrap(), 316.into());
        assert_eq!(triple(1, 2, -5, 1).frobenius_closed(0).unwrap(), 24.into());
        assert_eq!(triple(3, 2, 1, 2).frobenius_closed(0).unwrap(), 153.into());
    }

    #[test]
    fn frobenius_examples_match_oracle() {
        for (t, p) in [
            (triple(5, 2, 19, 3), 3),
            (triple(4, 3, -1, 1), 0),
            (triple(1, 2, -5, 1), 0),
            (triple(3, 2, 1, 2), 0),
        ] {
            let mut o = Oracle::new(t.gens()).unwrap();
            assert_eq!(t.frobenius_closed(p).unwrap(), o.frobenius_scan(p).unwrap());
        }
    }

    #[test]
    fn validity_boundaries() {
        let t = triple(5, 2, 19, 3);
        assert!(t.frobenius_closed(7).is_ok());
        assert_eq!(
            t.frobenius_closed(8),
            Err(Error::OutOfValidityRange {
                p: 8,
                max: 7.into()
            })
        );
        // Case 4 stops at q - 1: (7, 9, 13) has q = 2.
        let t = triple(1, 2, -5, 1);
        assert_eq!(t.frobenius_validity().unwrap(), 1.into());
        assert!(matches!(
            t.frobenius_closed(2),
            Err(Error::OutOfValidityRange { .. })
        ));
        // The raw expression at p = q is off: 52 against the true 51.
        assert_eq!(t.frobenius_formula(2).unwrap(), 52.into());
        assert_eq!(
            Oracle::new(t.gens()).unwrap().frobenius_scan(2).unwrap(),
            51.into()
        );

        let t = triple(1, 3, -100, 1);
        assert_eq!(t.frobenius_closed(0), Err(Error::NoClosedFormCase));
    }

    #[test]
    fn sylvester_examples() {
        let t = triple(5, 2, 19, 3);
        assert_eq!(t.sylvester_closed(0).unwrap(), 474u32.into());
        assert_eq!(t.sylvester_closed(7).unwrap(), 1587u32.into());
        assert!(matches!(
            t.sylvester_closed(8),
            Err(Error::OutOfValidityRange { .. })
        ));
        let t = triple(3, 2, 1, 2);
        let mut o = Oracle::new(t.gens()).unwrap();
        assert_eq!(
            t.sylvester_closed(0).unwrap(),
            o.sylvester_count(0).unwrap()
        );
        assert!(matches!(
            triple(4, 3, -1, 1).sylvester_closed(0),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn identity_on_examples() {
        for t in [
            triple(5, 2, 19, 3),
            triple(4, 3, -1, 1),
            triple(7, 10, 3, 9),
        ] {
            assert!(t.shift_identity_holds());
        }
    }
}
