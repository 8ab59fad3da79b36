//! Degree bounds and serialized reports.
//!
//! The pairing value attached to an integer degree is an exact rational
//! multiple of 2*pi; pi itself only appears inside certified interval
//! comparisons, so every gate decision and every floor in this module is
//! provably correct, not floating-point approximate.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::admissible::{
    check_admissible, compute_c_sigma, embed_sp_in_su, standard_rep_su, AdmissibilityCertificate,
    AdmissibleError, AdmissibleRep,
};
use crate::higgs::{
    curvature_and_trace_identity, make_sample, omega_two_routes, verify_wedge_collapse,
    HiggsError, SampleMode,
};
use crate::interval::{
    compare_pi_multiple, pi_enclosure, IntervalError, RationalInterval, DEFAULT_PI_BITS,
    PI_BITS_CAP,
};
use crate::lie::{build_algebra, Family, LieError};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ReportError {
    #[error("volume must be positive")]
    NonpositiveVolume,
    #[error("degree bounds require a nonzero pairing constant")]
    ZeroCSigma,
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("certified degree bound does not fit the report range")]
    BoundTooLarge,
    #[error("identity suite failed on trial {trial} (seed {seed}): {what}")]
    IdentitySuiteFailure { trial: usize, seed: u64, what: String },
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Admissible(#[from] AdmissibleError),
    #[error(transparent)]
    Higgs(#[from] HiggsError),
    #[error(transparent)]
    Interval(#[from] IntervalError),
}

/// Exact multiple of 2*pi: the pairing of a flat structure of degree d
/// evaluates to coeff * 2*pi.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToledoValue {
    pub coeff: Rational,
}

/// coeff = c_sigma * deg_v / vol. Replacing deg_v by -deg_v flips the sign.
pub fn toledo_from_degree(
    c_sigma: &Rational,
    deg_v: i64,
    vol: &Rational,
) -> Result<ToledoValue, ReportError> {
    if !vol.is_positive() {
        return Err(ReportError::NonpositiveVolume);
    }
    let coeff = c_sigma * Rational::from_integer(BigInt::from(deg_v)) / vol;
    Ok(ToledoValue { coeff })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum GateOutcome {
    Pass,
    Fail,
}

impl fmt::Display for GateOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GateOutcome::Pass => "PASS",
            GateOutcome::Fail => "FAIL",
        })
    }
}

/// Decides |coeff| * 2*pi <= rank by refining the pi enclosure until the
/// comparison is strict. Equality cannot occur for a nonzero rational
/// coefficient, so refinement terminates; coeff = 0 passes outright.
pub fn mw_gate(t: &ToledoValue, rank: usize, pi_bits: u32) -> Result<GateOutcome, ReportError> {
    if rank == 0 {
        return Err(ReportError::ZeroRank);
    }
    if t.coeff.is_zero() {
        return Ok(GateOutcome::Pass);
    }
    let two_abs = t.coeff.abs() * Rational::from_integer(BigInt::from(2));
    let target = Rational::from_integer(BigInt::from(rank));
    match compare_pi_multiple(&two_abs, &target, pi_bits)? {
        std::cmp::Ordering::Greater => Ok(GateOutcome::Fail),
        _ => Ok(GateOutcome::Pass),
    }
}

/// Certified enclosure of rank * vol / (2*pi*|c_sigma|) together with its
/// floor. The enclosure is refined until both endpoints share a floor, so
/// max_degree is exact.
pub fn degree_bound(
    rank: usize,
    c_sigma: &Rational,
    vol: &Rational,
    pi_bits: u32,
) -> Result<(RationalInterval, u64), ReportError> {
    if rank == 0 {
        return Err(ReportError::ZeroRank);
    }
    if c_sigma.is_zero() {
        return Err(ReportError::ZeroCSigma);
    }
    if !vol.is_positive() {
        return Err(ReportError::NonpositiveVolume);
    }
    let b = Rational::from_integer(BigInt::from(rank)) * vol
        / (c_sigma.abs() * Rational::from_integer(BigInt::from(2)));
    let mut bits = pi_bits.max(8);
    loop {
        let pi = pi_enclosure(bits);
        let enclosure = RationalInterval::new(&b / pi.hi(), &b / pi.lo());
        if let Some(floor) = enclosure.certified_floor() {
            let max_degree = floor.to_u64().ok_or(ReportError::BoundTooLarge)?;
            return Ok((enclosure, max_degree));
        }
        if bits >= PI_BITS_CAP {
            return Err(IntervalError::PrecisionExhausted { bits }.into());
        }
        bits = (bits * 2).min(PI_BITS_CAP);
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeRow {
    pub degree: i64,
    pub toledo_coeff: String,
    pub gate: GateOutcome,
    /// True on the two rows just outside the certified range; they document
    /// that the bound is tight.
    pub margin: bool,
}

/// Widest table half-width stored in full; wider certified ranges keep only
/// the zero, extreme, and margin rows.
const FULL_TABLE_LIMIT: u64 = 100;

fn degree_rows(
    c_sigma: &Rational,
    vol: &Rational,
    rank: usize,
    max_degree: u64,
    pi_bits: u32,
) -> Result<Vec<DegreeRow>, ReportError> {
    if max_degree >= i64::MAX as u64 {
        return Err(ReportError::BoundTooLarge);
    }
    let max = max_degree as i64;
    let degrees: Vec<i64> = if max_degree <= FULL_TABLE_LIMIT {
        (-(max + 1)..=max + 1).collect()
    } else {
        vec![-(max + 1), -max, -1, 0, 1, max, max + 1]
    };
    let mut rows = Vec::with_capacity(degrees.len());
    for d in degrees {
        let t = toledo_from_degree(c_sigma, d, vol)?;
        let gate = mw_gate(&t, rank, pi_bits)?;
        rows.push(DegreeRow {
            degree: d,
            toledo_coeff: t.coeff.to_string(),
            gate,
            margin: d.unsigned_abs() == max_degree + 1,
        });
    }
    Ok(rows)
}

/// Per-group pointwise identity campaign summary.
#[derive(Debug, Clone, Serialize)]
pub struct IdentitySummary {
    pub trials: usize,
    pub dims: [usize; 2],
    pub wedge_collapse_pass: usize,
    pub curvature_pass: usize,
    pub route_agreement_pass: usize,
}

fn run_identity_suite(
    rep: &AdmissibleRep,
    c_sigma: &Rational,
    seed: u64,
    trials: usize,
) -> Result<IdentitySummary, ReportError> {
    let (v, w) = (rep.dim_v(), rep.dim_w());
    // A 1x1 split has no commuting non-proportional pairs, so skip the
    // structured mode there.
    let modes: &[SampleMode] = if v * w >= 2 {
        &[SampleMode::IMultiple, SampleMode::ScalarMultiple, SampleMode::Structured]
    } else {
        &[SampleMode::IMultiple, SampleMode::ScalarMultiple]
    };
    let mut summary = IdentitySummary {
        trials,
        dims: [v, w],
        wedge_collapse_pass: 0,
        curvature_pass: 0,
        route_agreement_pass: 0,
    };
    for trial in 0..trials {
        let trial_seed = seed.wrapping_add(trial as u64);
        let fail = |what: String| ReportError::IdentitySuiteFailure {
            trial,
            seed: trial_seed,
            what,
        };
        let s = make_sample(v, w, modes[trial % modes.len()], trial_seed)?;
        let wedge_report = verify_wedge_collapse(&s)?;
        if !wedge_report.all_pass() {
            let names: Vec<&str> = wedge_report
                .checks
                .iter()
                .filter(|c| !c.pass)
                .map(|c| c.name)
                .collect();
            return Err(fail(format!("wedge identities failed: {}", names.join(", "))));
        }
        summary.wedge_collapse_pass += 1;
        curvature_and_trace_identity(&s, rep).map_err(|e| fail(e.to_string()))?;
        summary.curvature_pass += 1;
        omega_two_routes(&s, rep, c_sigma).map_err(|e| fail(e.to_string()))?;
        summary.route_agreement_pass += 1;
    }
    Ok(summary)
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportCertificates {
    pub admissibility: AdmissibilityCertificate,
    pub identity_suite: IdentitySummary,
}

/// Field order is the serialized order; goldens and the schema depend on it.
#[derive(Debug, Clone, Serialize)]
pub struct MwReport {
    pub schema: u32,
    pub group: String,
    pub family: String,
    pub params: Vec<usize>,
    pub matrix_size: usize,
    pub dim: usize,
    pub dim_k: usize,
    pub dim_p: usize,
    pub rank: usize,
    pub p_x: usize,
    pub c_sigma: String,
    pub vol: String,
    pub pi_bits: u32,
    pub seed: u64,
    pub trials: usize,
    pub bound_lo: String,
    pub bound_hi: String,
    pub max_degree: u64,
    pub degrees: Vec<DegreeRow>,
    pub certificates: ReportCertificates,
}

impl MwReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn degree_table_csv(&self) -> String {
        degree_table_csv(&self.degrees)
    }
}

pub fn degree_table_csv(rows: &[DegreeRow]) -> String {
    let mut out = String::from("degree,toledo_coeff,gate,margin\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            row.degree, row.toledo_coeff, row.gate, row.margin
        ));
    }
    out
}

/// Degree table only: the pairing constant, the bound, and the per-degree
/// gate decisions, without the identity campaign.
#[derive(Debug, Clone, Serialize)]
pub struct ScanTable {
    pub schema: u32,
    pub group: String,
    pub vol: String,
    pub rank: usize,
    pub c_sigma: String,
    pub pi_bits: u32,
    pub bound_lo: String,
    pub bound_hi: String,
    pub max_degree: u64,
    pub degrees: Vec<DegreeRow>,
}

impl ScanTable {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scan table serializes")
    }

    pub fn to_csv(&self) -> String {
        degree_table_csv(&self.degrees)
    }
}

pub fn build_scan(
    family: Family,
    vol: &Rational,
    pi_bits: u32,
) -> Result<ScanTable, ReportError> {
    if !vol.is_positive() {
        return Err(ReportError::NonpositiveVolume);
    }
    let g = build_algebra(family)?;
    let h = g.hermitian_structure()?;
    let rep = match family {
        Family::Su { .. } => standard_rep_su(&g, &h)?,
        Family::Sp { .. } => embed_sp_in_su(&g, &h)?,
    };
    let c_sigma = compute_c_sigma(&g, &h, &rep)?;
    let rank = h.rank();
    let (enclosure, max_degree) = degree_bound(rank, &c_sigma, vol, pi_bits)?;
    let degrees = degree_rows(&c_sigma, vol, rank, max_degree, pi_bits)?;
    Ok(ScanTable {
        schema: 1,
        group: family.to_string(),
        vol: vol.to_string(),
        rank,
        c_sigma: c_sigma.to_string(),
        pi_bits,
        bound_lo: enclosure.lo().to_string(),
        bound_hi: enclosure.hi().to_string(),
        max_degree,
        degrees,
    })
}

#[derive(Debug, Clone)]
pub struct ReportOptions {
    pub seed: u64,
    pub trials: usize,
    pub pi_bits: u32,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions { seed: 0, trials: 8, pi_bits: DEFAULT_PI_BITS }
    }
}

/// Full pipeline: algebra, Hermitian structure, representation,
/// admissibility certificate, pairing constant, identity campaign, bound.
/// The result is reproducible byte for byte from (family, vol, options).
pub fn build_report(
    family: Family,
    vol: &Rational,
    opts: &ReportOptions,
) -> Result<MwReport, ReportError> {
    if !vol.is_positive() {
        return Err(ReportError::NonpositiveVolume);
    }
    let g = build_algebra(family)?;
    let h = g.hermitian_structure()?;
    let rep = match family {
        Family::Su { .. } => standard_rep_su(&g, &h)?,
        Family::Sp { .. } => embed_sp_in_su(&g, &h)?,
    };
    let admissibility = check_admissible(&g, &rep, h.central())?;
    let c_sigma = compute_c_sigma(&g, &h, &rep)?;
    let identity_suite = run_identity_suite(&rep, &c_sigma, opts.seed, opts.trials)?;
    let rank = h.rank();
    let (enclosure, max_degree) = degree_bound(rank, &c_sigma, vol, opts.pi_bits)?;
    let degrees = degree_rows(&c_sigma, vol, rank, max_degree, opts.pi_bits)?;
    let params = match family {
        Family::Su { p, q } => vec![p, q],
        Family::Sp { n } => vec![n],
    };
    Ok(MwReport {
        schema: 1,
        group: family.to_string(),
        family: match family {
            Family::Su { .. } => "su".to_string(),
            Family::Sp { .. } => "sp".to_string(),
        },
        params,
        matrix_size: g.size(),
        dim: g.dim(),
        dim_k: g.dim_k(),
        dim_p: g.dim_p(),
        rank,
        p_x: h.p_x(),
        c_sigma: c_sigma.to_string(),
        vol: vol.to_string(),
        pi_bits: opts.pi_bits,
        seed: opts.seed,
        trials: opts.trials,
        bound_lo: enclosure.lo().to_string(),
        bound_hi: enclosure.hi().to_string(),
        max_degree,
        degrees,
        certificates: ReportCertificates { admissibility, identity_suite },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rq, rq2};

    #[test]
    fn toledo_oracle_values() {
        let t = toledo_from_degree(&rq(-2), 1, &rq(4)).unwrap();
        assert_eq!(t.coeff, rq2(-1, 2));
        let zero = toledo_from_degree(&rq(-2), 0, &rq(4)).unwrap();
        assert!(zero.coeff.is_zero());
        // deg(W) = -deg(V) flips the sign.
        let neg = toledo_from_degree(&rq(-2), -1, &rq(4)).unwrap();
        assert_eq!(neg.coeff, -&t.coeff);
        assert!(matches!(
            toledo_from_degree(&rq(-2), 1, &rq(0)),
            Err(ReportError::NonpositiveVolume)
        ));
    }

    #[test]
    fn gate_oracle_around_two_pi() {
        // 2*pi = 6.283..., so coefficient 1 fails at rank 6 and passes at 7.
        let t = ToledoValue { coeff: rq(1) };
        assert_eq!(mw_gate(&t, 6, 64).unwrap(), GateOutcome::Fail);
        assert_eq!(mw_gate(&t, 7, 64).unwrap(), GateOutcome::Pass);
        let zero = ToledoValue { coeff: rq(0) };
        assert_eq!(mw_gate(&zero, 1, 64).unwrap(), GateOutcome::Pass);
        assert!(matches!(mw_gate(&t, 0, 64), Err(ReportError::ZeroRank)));
    }

    #[test]
    fn degree_bound_oracles() {
        // rank 2, |c| = 2, vol 100: bound = 50/pi = 15.915..., floor 15.
        let (iv, max) = degree_bound(2, &rq(-2), &rq(100), 64).unwrap();
        assert_eq!(max, 15);
        assert!(iv.lo() > &rq2(159, 10) && iv.hi() < &rq(16));
        // rank 3, vol 1: bound = 3/(4*pi) = 0.2387..., floor 0.
        let (_, max) = degree_bound(3, &rq(-2), &rq(1), 64).unwrap();
        assert_eq!(max, 0);
    }

    #[test]
    fn degree_bound_scales_linearly_in_rank() {
        let (iv1, _) = degree_bound(1, &rq(-2), &rq(10), 128).unwrap();
        let (iv2, _) = degree_bound(2, &rq(-2), &rq(10), 128).unwrap();
        assert_eq!(iv2.lo(), &(iv1.lo() * rq(2)));
        assert_eq!(iv2.hi(), &(iv1.hi() * rq(2)));
    }

    #[test]
    fn degree_bound_rejects_bad_inputs() {
        assert!(matches!(
            degree_bound(1, &rq(0), &rq(1), 64),
            Err(ReportError::ZeroCSigma)
        ));
        assert!(matches!(
            degree_bound(1, &rq(-2), &rq(-1), 64),
            Err(ReportError::NonpositiveVolume)
        ));
        assert!(matches!(
            degree_bound(0, &rq(-2), &rq(1), 64),
            Err(ReportError::ZeroRank)
        ));
    }

    #[test]
    fn gate_agrees_with_bound_on_a_window() {
        for (rank, vol) in [(1usize, rq(10)), (2, rq(100)), (3, rq2(7, 3))] {
            let c = rq(-2);
            let (_, max) = degree_bound(rank, &c, &vol, 64).unwrap();
            for d in -(max as i64 + 1)..=(max as i64 + 1) {
                let t = toledo_from_degree(&c, d, &vol).unwrap();
                let gate = mw_gate(&t, rank, 64).unwrap();
                let expect = if d.unsigned_abs() <= max {
                    GateOutcome::Pass
                } else {
                    GateOutcome::Fail
                };
                assert_eq!(gate, expect, "rank {rank} vol {vol} degree {d}");
            }
        }
    }

    #[test]
    fn report_su23_vol_100() {
        let family = Family::Su { p: 2, q: 3 };
        let report = build_report(family, &rq(100), &ReportOptions::default()).unwrap();
        assert_eq!(report.schema, 1);
        assert_eq!(report.group, "su(2,3)");
        assert_eq!(report.rank, 2);
        assert_eq!(report.c_sigma, "-2");
        assert_eq!(report.max_degree, 15);
        assert_eq!(report.degrees.len(), 33);
        let by_degree = |d: i64| report.degrees.iter().find(|r| r.degree == d).unwrap();
        assert_eq!(by_degree(15).gate, GateOutcome::Pass);
        assert_eq!(by_degree(-15).gate, GateOutcome::Pass);
        assert_eq!(by_degree(16).gate, GateOutcome::Fail);
        assert!(by_degree(16).margin && by_degree(-16).margin);
        assert!(!by_degree(15).margin);
        assert!(report.certificates.admissibility.faithful);
        assert_eq!(report.certificates.identity_suite.trials, 8);
        assert_eq!(report.certificates.identity_suite.route_agreement_pass, 8);
    }

    #[test]
    fn report_sp_n1_vol_1() {
        let report =
            build_report(Family::Sp { n: 1 }, &rq(1), &ReportOptions::default()).unwrap();
        assert_eq!(report.group, "sp(2,R)");
        assert_eq!(report.rank, 1);
        assert_eq!(report.c_sigma, "-2");
        assert_eq!(report.max_degree, 0);
        assert_eq!(report.degrees.len(), 3);
        assert_eq!(report.degrees[1].degree, 0);
        assert_eq!(report.degrees[1].gate, GateOutcome::Pass);
        assert!(report.degrees[0].margin && report.degrees[2].margin);
    }

    #[test]
    fn report_json_is_deterministic() {
        let opts = ReportOptions { seed: 7, trials: 4, pi_bits: 64 };
        let a = build_report(Family::Su { p: 1, q: 2 }, &rq2(31, 7), &opts).unwrap();
        let b = build_report(Family::Su { p: 1, q: 2 }, &rq2(31, 7), &opts).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert!(a.to_json().starts_with("{\n  \"schema\": 1,"));
    }

    #[test]
    fn csv_table_shape() {
        let report =
            build_report(Family::Sp { n: 1 }, &rq(1), &ReportOptions::default()).unwrap();
        let csv = report.degree_table_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "degree,toledo_coeff,gate,margin");
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[2], "0,0,PASS,false");
    }

    #[test]
    fn toledo_table_is_antisymmetric() {
        let report =
            build_report(Family::Su { p: 1, q: 1 }, &rq(40), &ReportOptions::default()).unwrap();
        for row in &report.degrees {
            let mirror = report
                .degrees
                .iter()
                .find(|r| r.degree == -row.degree)
                .unwrap();
            let coeff: Rational = row.toledo_coeff.parse().unwrap();
            let mirror_coeff: Rational = mirror.toledo_coeff.parse().unwrap();
            assert_eq!(coeff, -mirror_coeff);
            assert_eq!(row.gate, mirror.gate);
        }
    }

    #[test]
    fn wide_tables_are_abbreviated() {
        let c = rq(-2);
        let vol = rq(10_000);
        let (_, max) = degree_bound(1, &c, &vol, 64).unwrap();
        assert!(max > FULL_TABLE_LIMIT);
        let rows = degree_rows(&c, &vol, 1, max, 64).unwrap();
        assert_eq!(rows.len(), 7);
        assert_eq!(rows[0].degree, -(max as i64) - 1);
        assert!(rows[0].margin);
        assert_eq!(rows[3].degree, 0);
        assert_eq!(rows[6].degree, max as i64 + 1);
    }
}
