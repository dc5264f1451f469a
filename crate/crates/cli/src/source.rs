use clap::Args;
use num_bigint::{BigInt, BigUint};
use num_traits::Signed;

use frobkit::geometric::{ShiftedGeometricQuad, ShiftedGeometricTriple};
use frobkit::verifier::Params;
use frobkit::{Error, GeneratorTuple, Result};

/// Generators either from shift parameters or listed explicitly.
#[derive(Args, Debug, Clone)]
pub struct GeneratorArgs {
    #[arg(long, required_unless_present = "gens")]
    pub a: Option<BigInt>,
    #[arg(long, required_unless_present = "gens")]
    pub b: Option<BigInt>,
    /// Shift; may be negative.
    #[arg(long, allow_hyphen_values = true, required_unless_present = "gens")]
    pub c: Option<BigInt>,
    #[arg(long, required_unless_present = "gens")]
    pub n: Option<u32>,
    /// Number of consecutive terms.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(3..=4))]
    pub vars: u8,
    /// Explicit generators, e.g. `--gens 3,5,7`.
    #[arg(long, value_delimiter = ',', num_args = 1.., conflicts_with_all = ["a", "b", "c", "n"])]
    pub gens: Vec<BigUint>,
}

pub struct Source {
    pub gens: GeneratorTuple,
    /// Closed-form carrier, if the generators have one.
    pub params: Option<Params>,
    /// Derived quantities shown alongside results (`q`, `r`, `case`, ...).
    pub details: Vec<(&'static str, String)>,
}

impl Source {
    pub fn triple(&self) -> Option<&ShiftedGeometricTriple> {
        match &self.params {
            Some(Params::Triple(t)) => Some(t),
            _ => None,
        }
    }
}

impl GeneratorArgs {
    pub fn resolve(&self) -> Result<Source> {
        if !self.gens.is_empty() {
            let gens = GeneratorTuple::new(self.gens.iter().cloned())?;
            let params = match gens.gens() {
                [a, b] => Some(Params::TwoGenerator(GeneratorTuple::new([
                    a.clone(),
                    b.clone(),
                ])?)),
                _ => None,
            };
            return Ok(Source {
                gens,
                params,
                details: Vec::new(),
            });
        }
        let missing = || Error::InvalidInput("--a, --b, --c and --n are all required".into());
        let a = self.a.clone().ok_or_else(missing)?;
        let b = self.b.clone().ok_or_else(missing)?;
        let c = self.c.clone().ok_or_else(missing)?;
        let n = self.n.ok_or_else(missing)?;
        if self.vars == 4 {
            let q = ShiftedGeometricQuad::new(a, b, c, n)?;
            let abg = q.abg();
            let details = vec![
                ("alpha", abg.alpha.to_string()),
                ("beta", abg.beta.to_string()),
                ("gamma", abg.gamma.to_string()),
            ];
            return Ok(Source {
                gens: q.gens().clone(),
                params: Some(Params::Quad(q)),
                details,
            });
        }
        let t = ShiftedGeometricTriple::new(a, b, c, n)?;
        let qr = t.qr();
        let mut details = vec![("q", qr.q.to_string()), ("r", qr.r.to_string())];
        if t.c().is_negative() {
            details.push(("case", t.negative_shift_case()?.case.to_string()));
        }
        Ok(Source {
            gens: t.gens().clone(),
            params: Some(Params::Triple(t)),
            details,
        })
    }
}

/// Closed-form failures that mean "use the oracle instead".
pub fn recoverable(e: &Error) -> bool {
    matches!(
        e,
        Error::NoClosedFormCase | Error::OutOfValidityRange { .. } | Error::Unsupported(_)
    )
}
