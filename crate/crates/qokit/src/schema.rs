//! Interchange formats: plain data mirrors of the domain types with exact
//! "p/q" rationals, suitable for JSON input and output, plus the
//! machine-readable error record the command-line tool emits.
//!
//! Every DTO validates on the way in, so a file that decodes is a value
//! the library accepts.

use crate::abacus::{Abacus, AbacusRow};
use crate::cylinder::CylindricalWeight;
use crate::duality::ChargeMatrix;
use crate::error::Error;
use crate::finite::ZeroOneMatrix;
use crate::hypertoric::PolarizedArrangement;
use crate::kn::{Loading, Multisegment, Segment};
use crate::weightings::Weighting;
use crate::Rat;
use num::{BigInt, One};
use serde::{Deserialize, Serialize};
use std::str::FromStr;

/// Render a rational exactly: `"p"` for integers, `"p/q"` otherwise.
pub fn rat_to_string(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse `"p"` or `"p/q"` with nonzero `q`.
pub fn rat_from_string(s: &str) -> Result<Rat, Error> {
    let parse_int = |t: &str| {
        BigInt::from_str(t.trim())
            .map_err(|_| Error::Schema(format!("bad integer {t:?} in rational")))
    };
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let denom = parse_int(q)?;
            if denom == BigInt::from(0) {
                return Err(Error::Schema(format!("zero denominator in {s:?}")));
            }
            Ok(Rat::new(parse_int(p)?, denom))
        }
    }
}

fn rats_from_strings(v: &[String]) -> Result<Vec<Rat>, Error> {
    v.iter().map(|s| rat_from_string(s)).collect()
}

fn rats_to_strings(v: &[Rat]) -> Vec<String> {
    v.iter().map(rat_to_string).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbacusRowDto {
    pub offset: i64,
    pub added: Vec<i64>,
    pub removed: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbacusDto {
    pub rows: Vec<AbacusRowDto>,
}

impl AbacusDto {
    pub fn encode(a: &Abacus) -> Self {
        AbacusDto {
            rows: a
                .rows
                .iter()
                .map(|r| {
                    let (offset, added, removed) = r.exceptions();
                    AbacusRowDto {
                        offset,
                        added: added.iter().copied().collect(),
                        removed: removed.iter().copied().collect(),
                    }
                })
                .collect(),
        }
    }

    pub fn decode(&self) -> Result<Abacus, Error> {
        if self.rows.is_empty() {
            return Err(Error::Schema("abacus needs at least one row".into()));
        }
        Ok(Abacus::new(
            self.rows
                .iter()
                .map(|r| {
                    AbacusRow::from_exceptions(
                        r.offset,
                        r.added.iter().copied(),
                        r.removed.iter().copied(),
                    )
                })
                .collect(),
        ))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightDto {
    pub e: usize,
    pub level: i64,
    pub t: Vec<i64>,
    pub eta: i64,
}

impl WeightDto {
    pub fn encode(wt: &CylindricalWeight) -> Self {
        WeightDto {
            e: wt.rank(),
            level: wt.level,
            t: wt.entries().to_vec(),
            eta: wt.eta,
        }
    }

    pub fn decode(&self) -> Result<CylindricalWeight, Error> {
        if self.t.len() != self.e {
            return Err(Error::Schema(format!(
                "weight lists {} entries but declares rank {}",
                self.t.len(),
                self.e
            )));
        }
        CylindricalWeight::new(self.t.clone(), self.eta, self.level)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoadingDto {
    /// Pairs `[position, vertex]` with exact rational positions.
    pub support: Vec<(String, usize)>,
}

impl LoadingDto {
    pub fn encode(l: &Loading) -> Self {
        LoadingDto {
            support: l
                .support
                .iter()
                .map(|(p, v)| (rat_to_string(p), *v))
                .collect(),
        }
    }

    pub fn decode(&self) -> Result<Loading, Error> {
        Loading::new(
            self.support
                .iter()
                .map(|(p, v)| Ok((rat_from_string(p)?, *v)))
                .collect::<Result<Vec<_>, Error>>()?,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultisegmentDto {
    /// Pairs `[residue, length]`.
    pub segments: Vec<(usize, usize)>,
}

impl MultisegmentDto {
    pub fn encode(m: &Multisegment) -> Self {
        MultisegmentDto {
            segments: m.segments.iter().map(|s| (s.residue, s.length)).collect(),
        }
    }

    pub fn decode(&self, e: usize) -> Result<Multisegment, Error> {
        Ok(Multisegment::new(
            self.segments
                .iter()
                .map(|&(r, n)| Segment::new(r, n, e))
                .collect::<Result<Vec<_>, Error>>()?,
        ))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightingDto {
    pub e: usize,
    pub theta: Vec<String>,
    pub kappa: String,
    pub residues: Vec<i64>,
}

impl WeightingDto {
    pub fn encode(w: &Weighting) -> Self {
        WeightingDto {
            e: w.e,
            theta: rats_to_strings(&w.theta),
            kappa: rat_to_string(&w.kappa),
            residues: w.residues.clone(),
        }
    }

    pub fn decode(&self) -> Result<Weighting, Error> {
        Weighting::new(
            rats_from_strings(&self.theta)?,
            rat_from_string(&self.kappa)?,
            self.e,
            self.residues.clone(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrangementDto {
    pub n: usize,
    pub g_basis: Vec<Vec<i64>>,
    pub xi: Vec<String>,
    pub eta: Vec<String>,
}

impl ArrangementDto {
    pub fn encode(a: &PolarizedArrangement) -> Self {
        ArrangementDto {
            n: a.n,
            g_basis: a.g_basis.clone(),
            xi: rats_to_strings(&a.xi_lift),
            eta: rats_to_strings(&a.eta),
        }
    }

    pub fn decode(&self) -> Result<PolarizedArrangement, Error> {
        if self.g_basis.len() != self.n {
            return Err(Error::Schema(format!(
                "basis has {} rows but declares ambient dimension {}",
                self.g_basis.len(),
                self.n
            )));
        }
        PolarizedArrangement::new(
            self.g_basis.clone(),
            rats_from_strings(&self.xi)?,
            rats_from_strings(&self.eta)?,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDto {
    pub entries: Vec<Vec<i64>>,
    #[serde(default)]
    pub w: i64,
}

impl MatrixDto {
    pub fn encode(m: &ChargeMatrix) -> Self {
        MatrixDto { entries: m.rows().to_vec(), w: m.w }
    }

    pub fn decode(&self) -> Result<ChargeMatrix, Error> {
        ChargeMatrix::new(self.entries.clone(), self.w)
    }

    pub fn decode_zero_one(&self) -> Result<ZeroOneMatrix, Error> {
        ZeroOneMatrix::new(self.entries.clone())
    }
}

/// Machine-readable failure report with the process exit status the
/// command-line tool uses for it: 2 for malformed input, 3 for a blown
/// enumeration cap, 4 for on-wall or otherwise non-generic input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorRecord {
    pub kind: String,
    pub message: String,
    pub exit_code: i32,
}

impl ErrorRecord {
    pub fn from_error(err: &Error) -> Self {
        let (kind, exit_code) = match err {
            Error::Schema(_) | Error::NotDominant(_) | Error::BeadMove { .. } => ("schema", 2),
            Error::CapExceeded { .. } => ("cap", 3),
            Error::OnWall(_) | Error::KappaRegime(_) | Error::EigenvalueCollision(_) => {
                ("non-generic", 4)
            }
        };
        ErrorRecord { kind: kind.into(), message: err.to_string(), exit_code }
    }
}
