//! `Z_p`-extensions of the base field by their coordinates: the matrices
//! `N_φ(S)`, defects at a slope, slope scans, the exceptional slope for
//! imaginary quadratic bases, and the algebraicity probe.

mod coords;
mod exceptional;
mod lll;
mod probe;

pub use coords::{kernel_basis, Coordinates, Slope};
pub use exceptional::{
    exceptional_slope_candidate, plant_exceptional, solve_exceptional, symmetric_data, twist_invariant,
    ExceptionalReport, ExceptionalSlope,
};
pub use lll::lll_reduce;
pub use probe::{algebraicity_probe, min_precision, probe_capacity, ProbeOutcome};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::padic::{Padic, PadicError, PrecisionPolicy};
use crate::regulators::{IsotypicMatrices, PadicMatrix, RegulatorError};

#[derive(Debug, thiserror::Error)]
pub enum ScanError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no unique candidate, precision insufficient: {0}")]
    Degenerate(String),
    #[error("precision {have} is too small for degree {degree} and height {height}; need N >= {needed}")]
    Capacity {
        have: u32,
        needed: u32,
        degree: usize,
        height: String,
    },
    #[error(transparent)]
    Regulator(#[from] RegulatorError),
    #[error(transparent)]
    Padic(PadicError),
}

impl From<PadicError> for ScanError {
    fn from(e: PadicError) -> Self {
        ScanError::Padic(e)
    }
}

/// Allowed loss, in digits, when checking `M_1·S ≡ 0`.
pub const KERNEL_SLACK: i64 = 8;

/// `[Diag(S)·L_φ − Diag(L_1·S); M_φ]`.
pub fn build_n_phi(
    s: &Coordinates,
    l_phi: &PadicMatrix,
    m_phi: &PadicMatrix,
    l_one: &PadicMatrix,
) -> Result<PadicMatrix, ScanError> {
    let n = s.len();
    if l_phi.nrows() != n || l_phi.ncols() != n || l_one.nrows() != n || l_one.ncols() != n || m_phi.ncols() != n {
        return Err(RegulatorError::Shape(format!(
            "S has length {n}, L_φ is {}x{}, L_1 is {}x{}, M_φ has {} columns",
            l_phi.nrows(),
            l_phi.ncols(),
            l_one.nrows(),
            l_one.ncols(),
            m_phi.ncols()
        ))
        .into());
    }
    let ls = l_one.mul_vec(s.values())?;
    let mut top = PadicMatrix::zeros(l_phi.prime(), n, n);
    for i in 0..n {
        for j in 0..n {
            let mut x = &s.values()[i] * l_phi.get(i, j);
            if i == j {
                x = &x - &ls[i];
            }
            top.set(i, j, x);
        }
    }
    Ok(top.stack(m_phi)?)
}

/// Rank verdict for `N_φ(S)`; `defect = (n − rank) − γ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SlopeDefect {
    pub rank: usize,
    pub structural_rank: usize,
    pub saturated: bool,
    pub certified: bool,
    pub defect_upper_bound: usize,
}

fn check_kernel(s: &Coordinates, one: &IsotypicMatrices, policy: &PrecisionPolicy) -> Result<(), ScanError> {
    let r = one.m.mul_vec(s.values())?;
    let floor = policy.zero_threshold - KERNEL_SLACK;
    if let Some(v) = r.iter().filter_map(|x| x.valuation()).find(|&v| v < floor) {
        return Err(ScanError::Precondition(format!(
            "S is not in ker M_1: a coordinate of M_1·S has valuation {v} < {floor}"
        )));
    }
    Ok(())
}

/// `δ^G_{k_∞/k}(φ)` upper bound at the extension with coordinates `s`.
pub fn defect_at_slope(
    s: &Coordinates,
    phi: &IsotypicMatrices,
    one: &IsotypicMatrices,
    policy: &PrecisionPolicy,
) -> Result<SlopeDefect, ScanError> {
    if !one.is_trivial() {
        return Err(ScanError::Precondition("L_1 must come from the trivial character".into()));
    }
    check_kernel(s, one, policy)?;
    let n = phi.n();
    let gamma = usize::from(phi.is_trivial());
    let nm = build_n_phi(s, &phi.l, &phi.m, &one.l)?;
    let bound = n - gamma;
    let c = nm.certified_rank_bounded(policy, bound);
    Ok(SlopeDefect {
        rank: c.rank,
        structural_rank: bound,
        saturated: c.saturated,
        certified: c.rank == bound && phi.m_saturated,
        defect_upper_bound: bound - c.rank,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Sampler {
    /// Uniform digits modulo `p^N` for the coefficients in a kernel basis.
    Random { count: usize },
    /// `S = b_0 + t·b_1 + t²·b_2 + …` for `t = 0, …, count − 1`.
    Grid { count: usize },
}

impl Sampler {
    pub fn count(&self) -> usize {
        match self {
            Sampler::Random { count } | Sampler::Grid { count } => *count,
        }
    }
}

impl std::fmt::Display for Sampler {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Sampler::Random { count } => write!(f, "random:{count}"),
            Sampler::Grid { count } => write!(f, "grid:{count}"),
        }
    }
}

impl std::str::FromStr for Sampler {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let (kind, count) = s.split_once(':').ok_or_else(|| format!("sampler {s:?} is not kind:count"))?;
        let count: usize = count.parse().map_err(|_| format!("bad sample count in {s:?}"))?;
        match kind {
            "random" => Ok(Sampler::Random { count }),
            "grid" => Ok(Sampler::Grid { count }),
            _ => Err(format!("unknown sampler {kind:?} (expected random or grid)")),
        }
    }
}

/// A labelled set of coordinates to evaluate.
#[derive(Clone, Debug)]
pub struct SamplePoint {
    pub label: Option<String>,
    pub coords: Coordinates,
}

/// The marked extensions followed by `count` sampled points of
/// `P(ker M_1)`. When `ker M_1` is everything and `n = 2`, the marked points
/// are slopes `1`, `−1`, `0` and `∞`; otherwise only the cyclotomic point.
pub fn sample_points(
    one: &IsotypicMatrices,
    sampler: Sampler,
    seed: u64,
    policy: &PrecisionPolicy,
) -> Result<Vec<SamplePoint>, ScanError> {
    let p = one.l.prime();
    let n = one.n();
    let prec = policy.precision;
    let basis = kernel_basis(&one.m, policy);
    if basis.is_empty() {
        return Err(ScanError::Precondition(
            "ker M_1 is empty: the fixture is inconsistent (the cyclotomic extension always exists)".into(),
        ));
    }
    let mut out = Vec::new();
    let mark = |label: &str, v: &[i64]| -> Result<SamplePoint, ScanError> {
        Ok(SamplePoint {
            label: Some(label.into()),
            coords: Coordinates::from_integers(p, prec, v)?,
        })
    };
    out.push(mark("cyclotomic", &vec![1; n])?);
    let full = basis.len() == n;
    if full && n == 2 {
        out.push(mark("anticyclotomic", &[1, -1])?);
        out.push(mark("zero", &[0, 1])?);
        out.push(mark("infinity", &[1, 0])?);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = sampler.count();
    let mut produced = 0;
    let mut t: i64 = 0;
    while produced < count {
        let c: Vec<Padic> = match sampler {
            Sampler::Random { .. } => (0..basis.len())
                .map(|_| Padic::random_integer(p, prec, &mut rng))
                .collect(),
            Sampler::Grid { .. } => {
                let k = basis.len();
                let mut c = Vec::with_capacity(k);
                let mut pw: i64 = 1;
                for _ in 0..k {
                    c.push(Padic::from_i64(pw, p, prec)?);
                    pw = pw.saturating_mul(t);
                }
                t += 1;
                if k == 2 {
                    // the point at infinity of the s_2-chart is already marked
                    c.reverse();
                }
                c
            }
        };
        let s = coords::combine(&basis, &c);
        if let Ok(coords) = Coordinates::new(s) {
            out.push(SamplePoint { label: None, coords });
            produced += 1;
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanPoint {
    pub label: Option<String>,
    pub slope_digits: String,
    pub rank: usize,
    pub saturated: bool,
    pub defect_upper_bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub field_id: String,
    pub p: u64,
    #[serde(rename = "N")]
    pub precision: u32,
    pub seed: u64,
    pub character: String,
    pub sampler: String,
    pub points: Vec<ScanPoint>,
}

impl ScanReport {
    pub fn all_zero(&self) -> bool {
        self.points.iter().all(|x| x.defect_upper_bound == 0 && x.saturated)
    }

    /// Columns `slope_digits,rank,saturated,defect`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("slope_digits,rank,saturated,defect\n");
        for x in &self.points {
            out.push_str(&format!(
                "{},{},{},{}\n",
                x.slope_digits, x.rank, x.saturated, x.defect_upper_bound
            ));
        }
        out
    }
}

/// Evaluates `defect_at_slope` at every sample in parallel. Marked points
/// come first; the rest are sorted by their slope digits.
pub fn slope_scan(
    field_id: &str,
    phi: &IsotypicMatrices,
    one: &IsotypicMatrices,
    sampler: Sampler,
    seed: u64,
    policy: &PrecisionPolicy,
) -> Result<ScanReport, ScanError> {
    let pts = if sampler.count() == 0 {
        Vec::new()
    } else {
        sample_points(one, sampler, seed, policy)?
    };
    let mut points: Vec<ScanPoint> = pts
        .par_iter()
        .map(|sp| {
            let d = defect_at_slope(&sp.coords, phi, one, policy)?;
            Ok(ScanPoint {
                label: sp.label.clone(),
                slope_digits: sp.coords.digits(policy.precision),
                rank: d.rank,
                saturated: d.certified,
                defect_upper_bound: d.defect_upper_bound,
            })
        })
        .collect::<Result<_, ScanError>>()?;
    let marked = points.iter().filter(|x| x.label.is_some()).count();
    points[marked..].sort_by(|a, b| {
        (a.slope_digits.len(), &a.slope_digits).cmp(&(b.slope_digits.len(), &b.slope_digits))
    });
    Ok(ScanReport {
        field_id: field_id.into(),
        p: one.l.prime(),
        precision: policy.precision,
        seed,
        character: phi.label.clone(),
        sampler: sampler.to_string(),
        points,
    })
}
