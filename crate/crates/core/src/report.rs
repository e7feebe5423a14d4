//! Machine-readable documents for certificates, tables and triangle
//! reports.
//!
//! Wire conventions: arbitrary-precision integers serialize as decimal
//! strings, rationals as `{"num": "...", "den": "..."}` pairs of decimal
//! strings (exactness over convenience), and machine-sized fields (residue
//! classes, rank bounds, point counts) as plain JSON numbers.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::curve::{curve_from_pair, RationalPoint, TorsionOutcome, TorsionVerdict};
use crate::descent::{
    rank_bounds_with, reconstruct_point, DescentError, DescentOutcome, DescentVerdict,
    ObstructionReason, RankResult, Witness,
};
use crate::pairs::{scan_pairs, PrimePair};

/// Exact rational on the wire.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalDoc {
    pub num: String,
    pub den: String,
}

impl From<&Rational> for RationalDoc {
    fn from(r: &Rational) -> Self {
        RationalDoc {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        }
    }
}

impl RationalDoc {
    /// Parses and canonicalizes; rejects zero denominators.
    pub fn to_rational(&self) -> Result<Rational, String> {
        let num: BigInt = self
            .num
            .parse()
            .map_err(|_| format!("bad numerator {:?}", self.num))?;
        let den: BigInt = self
            .den
            .parse()
            .map_err(|_| format!("bad denominator {:?}", self.den))?;
        if den.is_zero() {
            return Err("zero denominator".to_string());
        }
        Ok(Rational::new(num, den))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairDoc {
    pub p: String,
    pub class: u8,
    pub q: String,
}

impl From<&PrimePair> for PairDoc {
    fn from(pair: &PrimePair) -> Self {
        PairDoc {
            p: pair.p().to_string(),
            class: pair.residue_class(),
            q: pair.q().to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TorsionDoc {
    /// `"klein_four"` or `"inconclusive"`.
    pub verdict: String,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub witness_ells: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub count_gcd: Option<u64>,
    /// `(ell, point count)` observations in scan order.
    pub observed: Vec<(u64, u64)>,
}

impl From<&TorsionVerdict> for TorsionDoc {
    fn from(v: &TorsionVerdict) -> Self {
        match &v.outcome {
            TorsionOutcome::KleinFour { witness_ells } => TorsionDoc {
                verdict: "klein_four".to_string(),
                witness_ells: witness_ells.clone(),
                count_gcd: None,
                observed: v.observed.clone(),
            },
            TorsionOutcome::Inconclusive { count_gcd } => TorsionDoc {
                verdict: "inconclusive".to_string(),
                witness_ells: Vec::new(),
                count_gcd: Some(*count_gcd),
                observed: v.observed.clone(),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SquareClassDoc {
    pub symbol: String,
    pub value: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReasonDoc {
    /// `"shared_factor"`, `"divisibility_cascade"`, `"quadratic_nonresidue"`
    /// or `"local_sieve"`.
    pub kind: String,
    pub modulus: String,
    pub detail: String,
}

impl From<&ObstructionReason> for ReasonDoc {
    fn from(r: &ObstructionReason) -> Self {
        let kind = match r {
            ObstructionReason::SharedFactor { .. } => "shared_factor",
            ObstructionReason::DivisibilityCascade { .. } => "divisibility_cascade",
            ObstructionReason::NonResidue { .. } => "quadratic_nonresidue",
            ObstructionReason::LocalSieve { .. } => "local_sieve",
        };
        ReasonDoc {
            kind: kind.to_string(),
            modulus: r.modulus().to_string(),
            detail: r.to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WitnessDoc {
    pub r1: String,
    pub r2: String,
    pub r3: String,
    pub s: String,
}

impl From<&Witness> for WitnessDoc {
    fn from(w: &Witness) -> Self {
        WitnessDoc {
            r1: w.r1.to_string(),
            r2: w.r2.to_string(),
            r3: w.r3.to_string(),
            s: w.s.to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointDoc {
    pub x: RationalDoc,
    pub y: RationalDoc,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OutcomeDoc {
    pub b1: SquareClassDoc,
    pub b2: SquareClassDoc,
    /// The four members of the candidate's coset modulo the torsion image.
    pub coset: Vec<String>,
    /// `"in_torsion_image"`, `"obstructed"`, `"witnessed"` or `"unresolved"`.
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<ReasonDoc>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<WitnessDoc>,
    /// Point reconstructed from the witness, when there is one.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub point: Option<PointDoc>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub search_bound: Option<u64>,
}

/// The full rank certificate for one prime pair.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RankCertificateDoc {
    pub p: String,
    pub class: u8,
    pub q: String,
    /// Human-readable integral model.
    pub curve: String,
    pub torsion: TorsionDoc,
    pub rank_lower: u32,
    pub rank_upper: u32,
    pub certified: bool,
    pub image_size_bound: u64,
    pub outcomes: Vec<OutcomeDoc>,
}

/// Renders the integral model `y^2 = x^3 + (p^2 - 1) x^2 - p^2 x`.
pub fn curve_equation_string(pair: &PrimePair) -> String {
    let curve = curve_from_pair(pair);
    format!("y^2 = x^3 + {}*x^2 - {}*x", curve.a2(), curve.p_squared())
}

/// Converts a finished descent run into its certificate document,
/// reconstructing the rational point behind every witnessed coset.
pub fn rank_certificate(pair: &PrimePair, result: &RankResult) -> RankCertificateDoc {
    let curve = curve_from_pair(pair);
    let outcomes = result
        .outcomes
        .iter()
        .map(|DescentOutcome { pair: cand, verdict }| {
            let class_doc = |c: &crate::descent::SquareClass| SquareClassDoc {
                symbol: c.symbol(),
                value: c.value(pair).to_string(),
            };
            let coset = cand.a_coset().iter().map(|m| m.to_string()).collect();
            let (verdict_str, reason, witness, point, search_bound) = match verdict {
                DescentVerdict::InTorsionImage => ("in_torsion_image", None, None, None, None),
                DescentVerdict::Obstructed(r) => ("obstructed", Some(r.into()), None, None, None),
                DescentVerdict::Witnessed(w) => {
                    let pt = reconstruct_point(cand, w, &curve)
                        .expect("witness was verified during the descent run");
                    let point = match pt {
                        RationalPoint::Affine { x, y } => Some(PointDoc {
                            x: (&x).into(),
                            y: (&y).into(),
                        }),
                        RationalPoint::Infinity => None,
                    };
                    ("witnessed", None, Some(w.into()), point, None)
                }
                DescentVerdict::Unresolved { search_bound } => {
                    ("unresolved", None, None, None, Some(*search_bound))
                }
            };
            OutcomeDoc {
                b1: class_doc(&cand.b1),
                b2: class_doc(&cand.b2),
                coset,
                verdict: verdict_str.to_string(),
                reason,
                witness,
                point,
                search_bound,
            }
        })
        .collect();
    RankCertificateDoc {
        p: pair.p().to_string(),
        class: pair.residue_class(),
        q: pair.q().to_string(),
        curve: curve_equation_string(pair),
        torsion: (&result.torsion).into(),
        rank_lower: result.lower,
        rank_upper: result.upper,
        certified: result.certified,
        image_size_bound: result.image_size_bound,
        outcomes,
    }
}

/// One row of the reproduction table. Pairs outside the theorem scope
/// (`p = 1 mod 8`) carry no rank bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub p: BigUint,
    pub residue_class: u8,
    pub q: BigUint,
    pub rank_lower: Option<u32>,
    pub rank_upper: Option<u32>,
    pub certified: bool,
}

impl TableRow {
    pub fn status(&self) -> &'static str {
        if self.rank_lower.is_none() {
            "out_of_scope"
        } else if self.certified {
            "certified"
        } else {
            "bounds_only"
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableRowDoc {
    pub p: String,
    pub class: u8,
    pub q: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rank_lower: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rank_upper: Option<u32>,
    pub certified: bool,
    pub status: String,
}

impl From<&TableRow> for TableRowDoc {
    fn from(row: &TableRow) -> Self {
        TableRowDoc {
            p: row.p.to_string(),
            class: row.residue_class,
            q: row.q.to_string(),
            rank_lower: row.rank_lower,
            rank_upper: row.rank_upper,
            certified: row.certified,
            status: row.status().to_string(),
        }
    }
}

/// Runs the whole pipeline (scan, torsion, descent, witnesses) for every
/// pair up to `limit` and collects the table rows in ascending `p`.
pub fn build_table(
    limit: u64,
    search_bound: u64,
    torsion_ell_max: u64,
) -> Result<Vec<TableRow>, DescentError> {
    let mut rows = Vec::new();
    for pair in scan_pairs(limit) {
        if !pair.in_theorem_scope() {
            rows.push(TableRow {
                p: pair.p().clone(),
                residue_class: pair.residue_class(),
                q: pair.q().clone(),
                rank_lower: None,
                rank_upper: None,
                certified: false,
            });
            continue;
        }
        let result = rank_bounds_with(&pair, search_bound, torsion_ell_max)?;
        rows.push(TableRow {
            p: pair.p().clone(),
            residue_class: pair.residue_class(),
            q: pair.q().clone(),
            rank_lower: Some(result.lower),
            rank_upper: Some(result.upper),
            certified: result.certified,
        });
    }
    Ok(rows)
}

/// Triangle record on the wire.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TriangleDoc {
    pub a: RationalDoc,
    pub b: RationalDoc,
    pub c: RationalDoc,
    pub p: String,
}

impl From<&crate::heron::HeronTriangle> for TriangleDoc {
    fn from(tri: &crate::heron::HeronTriangle) -> Self {
        TriangleDoc {
            a: tri.a().into(),
            b: tri.b().into(),
            c: tri.c().into(),
            p: tri.p().to_string(),
        }
    }
}

impl TriangleDoc {
    pub fn to_triangle(&self) -> Result<crate::heron::HeronTriangle, String> {
        let a = self.a.to_rational()?;
        let b = self.b.to_rational()?;
        let c = self.c.to_rational()?;
        let p: BigUint = self.p.parse().map_err(|_| format!("bad prime {:?}", self.p))?;
        crate::heron::HeronTriangle::new(a, b, c, p).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolutionDoc {
    pub x: String,
    pub y: String,
    pub z: String,
}

impl From<&crate::heron::DiophSolution> for SolutionDoc {
    fn from(s: &crate::heron::DiophSolution) -> Self {
        SolutionDoc {
            x: s.x().to_string(),
            y: s.y().to_string(),
            z: s.z().to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckDoc {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl From<&crate::heron::HeronCheck> for CheckDoc {
    fn from(c: &crate::heron::HeronCheck) -> Self {
        CheckDoc {
            name: c.name.clone(),
            pass: c.pass,
            detail: c.detail.clone(),
        }
    }
}

/// Verification report on the wire.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyReportDoc {
    pub triangle: TriangleDoc,
    pub checks: Vec<CheckDoc>,
    pub isosceles: bool,
    pub all_pass: bool,
}

pub fn verify_report(
    tri: &crate::heron::HeronTriangle,
    report: &crate::heron::VerificationReport,
) -> VerifyReportDoc {
    VerifyReportDoc {
        triangle: tri.into(),
        checks: report.checks.iter().map(Into::into).collect(),
        isosceles: report.isosceles,
        all_pass: report.all_pass(),
    }
}

/// Outcome document for the triangle command.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TriangleReportDoc {
    pub p: String,
    /// `"found"`, `"not_found_within_bound"` or `"proven_nonexistent"`.
    pub status: String,
    pub quartic_bound: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub corollary: Option<SolutionDoc>,
    pub solutions: Vec<SolutionDoc>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub triangle: Option<TriangleDoc>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub checks: Vec<CheckDoc>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub isosceles: Option<bool>,
    /// Attached rank-0 certificate backing a nonexistence claim.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate: Option<RankCertificateDoc>,
}
