//! Pointwise identities for block Higgs fields.
//!
//! A sample is a pair (theta1, theta2) of off-diagonal block matrices
//! standing for one endomorphism-valued 1-form evaluated on two tangent
//! vectors; the commuting requirement [theta1, theta2] = 0 is the pointwise
//! shadow of the integrability condition. All identities below are exact
//! matrix equalities.
//!
//! Wedge convention, fixed once: for 1-forms alpha, beta with values
//! (alpha1, alpha2), (beta1, beta2) on the two tangent vectors,
//! [alpha ^ beta] = [alpha1, beta2] - [alpha2, beta1].

use std::fmt;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::admissible::AdmissibleRep;
use crate::matrix::{MatrixError, MatrixF};
use crate::scalar::{rq2, FieldScalar};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HiggsError {
    #[error("block dimensions must be at least 1")]
    BadDims,
    #[error("matrix is not in off-diagonal block form for split ({v},{w})")]
    NotOffDiagonal { v: usize, w: usize },
    #[error("theta1 and theta2 do not commute")]
    NotCommuting { witness: MatrixF },
    #[error("structured sampling exhausted after {tries} attempts for dims ({v},{w})")]
    ResampleExhausted { tries: usize, v: usize, w: usize },
    #[error("representation split ({rep_v},{rep_w}) does not match sample dims ({v},{w})")]
    DimsMismatch { rep_v: usize, rep_w: usize, v: usize, w: usize },
    #[error("curvature leaks outside the diagonal blocks")]
    BlockLeak { witness: MatrixF },
    #[error("trace identity mismatch: lhs {lhs}, rhs {rhs}")]
    TraceIdentityMismatch { lhs: FieldScalar, rhs: FieldScalar },
    #[error("evaluation routes disagree: {a}, {b}, {c}")]
    RouteMismatch { a: FieldScalar, b: FieldScalar, c: FieldScalar },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SampleMode {
    /// theta2 = i * theta1; the surface-style case where the second tangent
    /// direction is the complex rotation of the first.
    IMultiple,
    /// theta2 = lambda * theta1 for a nonzero rational lambda.
    ScalarMultiple,
    /// Independent commuting blocks through disjoint sub-splits.
    Structured,
}

impl fmt::Display for SampleMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SampleMode::IMultiple => "i-multiple",
            SampleMode::ScalarMultiple => "scalar-multiple",
            SampleMode::Structured => "structured",
        };
        f.write_str(s)
    }
}

/// One Higgs field evaluated on two tangent vectors, in block form
/// [[0, beta], [gamma, 0]] over the split C^v + C^w.
#[derive(Debug, Clone, PartialEq)]
pub struct HiggsSample {
    dim_v: usize,
    dim_w: usize,
    theta1: MatrixF,
    theta2: MatrixF,
    seed: Option<u64>,
    mode: Option<SampleMode>,
}

impl HiggsSample {
    pub fn new(
        dim_v: usize,
        dim_w: usize,
        theta1: MatrixF,
        theta2: MatrixF,
    ) -> Result<Self, HiggsError> {
        if dim_v < 1 || dim_w < 1 {
            return Err(HiggsError::BadDims);
        }
        let size = dim_v + dim_w;
        for th in [&theta1, &theta2] {
            if th.rows() != size || th.cols() != size {
                return Err(HiggsError::NotOffDiagonal { v: dim_v, w: dim_w });
            }
            if !th.block(0, 0, dim_v, dim_v).is_zero()
                || !th.block(dim_v, dim_v, dim_w, dim_w).is_zero()
            {
                return Err(HiggsError::NotOffDiagonal { v: dim_v, w: dim_w });
            }
        }
        let comm = theta1.commutator(&theta2)?;
        if !comm.is_zero() {
            return Err(HiggsError::NotCommuting { witness: comm });
        }
        Ok(HiggsSample { dim_v, dim_w, theta1, theta2, seed: None, mode: None })
    }

    /// Skips all validation. Exists for negative-control tests only.
    pub fn new_unchecked(
        dim_v: usize,
        dim_w: usize,
        theta1: MatrixF,
        theta2: MatrixF,
    ) -> Self {
        HiggsSample { dim_v, dim_w, theta1, theta2, seed: None, mode: None }
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn dim_w(&self) -> usize {
        self.dim_w
    }

    pub fn theta1(&self) -> &MatrixF {
        &self.theta1
    }

    pub fn theta2(&self) -> &MatrixF {
        &self.theta2
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn mode(&self) -> Option<SampleMode> {
        self.mode
    }
}

fn rand_rational(rng: &mut ChaCha8Rng) -> Rational {
    let n = (rng.next_u64() % 9) as i64 - 4;
    let d = (rng.next_u64() % 3) as i64 + 1;
    rq2(n, d)
}

fn rand_scalar(rng: &mut ChaCha8Rng) -> FieldScalar {
    let a = rand_rational(rng);
    let c = rand_rational(rng);
    FieldScalar::new(a, rq2(0, 1), c, rq2(0, 1))
}

fn rand_nonzero_rational(rng: &mut ChaCha8Rng) -> Rational {
    let n = (rng.next_u64() % 4) as i64 + 1;
    let sign = if rng.next_u64() % 2 == 0 { 1 } else { -1 };
    let d = (rng.next_u64() % 3) as i64 + 1;
    rq2(sign * n, d)
}

/// theta2 = lambda * theta1 for some field scalar lambda, or the reverse.
fn proportional(theta1: &MatrixF, theta2: &MatrixF) -> bool {
    let one_way = |a: &MatrixF, b: &MatrixF| -> bool {
        // Find the first nonzero entry of a; the candidate ratio must
        // reproduce every entry of b.
        let mut lambda: Option<FieldScalar> = None;
        for r in 0..a.rows() {
            for c in 0..a.cols() {
                let x = a.get(r, c);
                if !x.is_zero() {
                    lambda = b.get(r, c).div(x).ok();
                    break;
                }
            }
            if lambda.is_some() {
                break;
            }
        }
        let Some(lambda) = lambda else {
            // a is zero; b = lambda * a only if b is zero too.
            return b.is_zero();
        };
        a.scale(&lambda) == *b
    };
    one_way(theta1, theta2) || one_way(theta2, theta1)
}

const STRUCTURED_MAX_TRIES: usize = 32;

/// Deterministic sample generator. All modes produce certified commuting
/// pairs; `Structured` additionally rejects proportional pairs, resampling
/// up to a fixed bound.
pub fn make_sample(
    dim_v: usize,
    dim_w: usize,
    mode: SampleMode,
    seed: u64,
) -> Result<HiggsSample, HiggsError> {
    if dim_v < 1 || dim_w < 1 {
        return Err(HiggsError::BadDims);
    }
    let size = dim_v + dim_w;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fill = |rng: &mut ChaCha8Rng,
                rows: std::ops::Range<usize>,
                cols: std::ops::Range<usize>,
                m: &mut MatrixF| {
        for r in rows {
            for c in cols.clone() {
                m.set(r, c, rand_scalar(rng));
            }
        }
    };
    let sample = match mode {
        SampleMode::IMultiple | SampleMode::ScalarMultiple => {
            let mut theta1 = MatrixF::zero(size, size);
            fill(&mut rng, 0..dim_v, dim_v..size, &mut theta1);
            fill(&mut rng, dim_v..size, 0..dim_v, &mut theta1);
            let theta2 = match mode {
                SampleMode::IMultiple => theta1.scale(&FieldScalar::i()),
                SampleMode::ScalarMultiple => {
                    theta1.scale_rat(&rand_nonzero_rational(&mut rng))
                }
                SampleMode::Structured => unreachable!(),
            };
            HiggsSample::new(dim_v, dim_w, theta1, theta2)?
        }
        SampleMode::Structured => {
            let mut found = None;
            for _ in 0..STRUCTURED_MAX_TRIES {
                let (theta1, theta2) = if dim_v >= 2 && dim_w >= 2 {
                    // Disjoint sub-splits: upper blocks use the top-left
                    // corner, lower blocks the bottom-right corner, so all
                    // four cross products vanish.
                    let v1 = (rng.next_u64() % (dim_v as u64 - 1)) as usize + 1;
                    let w1 = (rng.next_u64() % (dim_w as u64 - 1)) as usize + 1;
                    let mut t1 = MatrixF::zero(size, size);
                    let mut t2 = MatrixF::zero(size, size);
                    for t in [&mut t1, &mut t2] {
                        fill(&mut rng, 0..v1, dim_v..dim_v + w1, t);
                        fill(&mut rng, dim_v + w1..size, v1..dim_v, t);
                    }
                    (t1, t2)
                } else if dim_v * dim_w >= 2 {
                    // One-sided: upper blocks only, which always commute.
                    let mut t1 = MatrixF::zero(size, size);
                    let mut t2 = MatrixF::zero(size, size);
                    fill(&mut rng, 0..dim_v, dim_v..size, &mut t1);
                    fill(&mut rng, 0..dim_v, dim_v..size, &mut t2);
                    (t1, t2)
                } else {
                    // A 1x1 split admits no commuting non-proportional pair.
                    break;
                };
                if theta1.is_zero()
                    || theta2.is_zero()
                    || proportional(&theta1, &theta2)
                    || !theta1.commutator(&theta2)?.is_zero()
                {
                    continue;
                }
                found = Some(HiggsSample::new(dim_v, dim_w, theta1, theta2)?);
                break;
            }
            found.ok_or(HiggsError::ResampleExhausted {
                tries: STRUCTURED_MAX_TRIES,
                v: dim_v,
                w: dim_w,
            })?
        }
    };
    Ok(HiggsSample { seed: Some(seed), mode: Some(mode), ..sample })
}

/// The involution x -> -conj(x)^T applied to a 1-form value.
pub fn tau(theta: &MatrixF) -> MatrixF {
    -&theta.dagger()
}

/// theta + conj(theta)^T = theta - tau(theta).
pub fn theta_c(theta: &MatrixF) -> MatrixF {
    theta.add(&theta.dagger()).expect("square input")
}

/// [alpha ^ beta](xi1, xi2) = [alpha(xi1), beta(xi2)] - [alpha(xi2), beta(xi1)].
pub fn wedge(
    a: (&MatrixF, &MatrixF),
    b: (&MatrixF, &MatrixF),
) -> Result<MatrixF, MatrixError> {
    a.0.commutator(b.1)?.sub(&a.1.commutator(b.0)?)
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Vec<String>>>,
}

/// Outcome of one identity suite run over a sample.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub dim_v: usize,
    pub dim_w: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Expands [Theta ^ Theta] for Theta = theta + conj(theta)^T and verifies
/// the collapse to 2 [theta ^ conj(theta)^T] step by step.
pub fn verify_wedge_collapse(s: &HiggsSample) -> Result<IdentityReport, HiggsError> {
    let th = (&s.theta1, &s.theta2);
    let dg1 = s.theta1.dagger();
    let dg2 = s.theta2.dagger();
    let dg = (&dg1, &dg2);
    let big1 = theta_c(&s.theta1);
    let big2 = theta_c(&s.theta2);
    let big = (&big1, &big2);

    let w_big = wedge(big, big)?;
    let w_tt = wedge(th, th)?;
    let w_td = wedge(th, dg)?;
    let w_dt = wedge(dg, th)?;
    let w_dd = wedge(dg, dg)?;

    let mut checks = Vec::new();
    let mut push = |name: &'static str, lhs: &MatrixF, rhs: &MatrixF| -> Result<(), HiggsError> {
        let diff = lhs.sub(rhs)?;
        let pass = diff.is_zero();
        checks.push(IdentityCheck {
            name,
            pass,
            witness: (!pass).then(|| diff.to_text_rows()),
        });
        Ok(())
    };

    let expansion = w_tt.add(&w_td)?.add(&w_dt)?.add(&w_dd)?;
    push("wedge-expansion", &w_big, &expansion)?;
    let zero = MatrixF::zero(w_tt.rows(), w_tt.cols());
    push("theta-wedge-theta-vanishes", &w_tt, &zero)?;
    push("conjugate-wedge-vanishes", &w_dd, &zero)?;
    push("mixed-wedges-equal", &w_td, &w_dt)?;
    push("wedge-collapse", &w_big, &w_td.scale_rat(&rq2(2, 1)))?;

    Ok(IdentityReport {
        dim_v: s.dim_v,
        dim_w: s.dim_w,
        seed: s.seed,
        mode: s.mode.map(|m| m.to_string()),
        checks,
    })
}

/// Diagonal blocks of the curvature form.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureBlocks {
    pub f_v: MatrixF,
    pub f_w: MatrixF,
}

/// Computes F = -[theta ^ conj(theta)^T] (equivalently [theta ^ tau(theta)],
/// both spellings evaluated and compared), certifies its block-diagonal
/// shape and the flatness trace relation tr F_V = -tr F_W, then matches
///
///   tr(sigma(I) [theta ^ conj(theta)^T])
///     = (i/(v+w)) (w tr F_V - v tr F_W) = i tr F_V.
///
/// Returns the curvature blocks and the equal pair (lhs, rhs).
pub fn curvature_and_trace_identity(
    s: &HiggsSample,
    rep: &AdmissibleRep,
) -> Result<(CurvatureBlocks, (FieldScalar, FieldScalar)), HiggsError> {
    let (v, w) = (s.dim_v, s.dim_w);
    if (rep.dim_v(), rep.dim_w()) != (v, w) {
        return Err(HiggsError::DimsMismatch {
            rep_v: rep.dim_v(),
            rep_w: rep.dim_w(),
            v,
            w,
        });
    }
    let dg1 = s.theta1.dagger();
    let dg2 = s.theta2.dagger();
    let w_td = wedge((&s.theta1, &s.theta2), (&dg1, &dg2))?;
    let f = -&w_td;
    let tau1 = tau(&s.theta1);
    let tau2 = tau(&s.theta2);
    let f_alt = wedge((&s.theta1, &s.theta2), (&tau1, &tau2))?;
    if f != f_alt {
        return Err(HiggsError::TraceIdentityMismatch {
            lhs: f.trace()?,
            rhs: f_alt.trace()?,
        });
    }
    if !f.block(0, v, v, w).is_zero() || !f.block(v, 0, w, v).is_zero() {
        return Err(HiggsError::BlockLeak { witness: f });
    }
    let blocks = CurvatureBlocks { f_v: f.block(0, 0, v, v), f_w: f.block(v, v, w, w) };
    let tr_v = blocks.f_v.trace()?;
    let tr_w = blocks.f_w.trace()?;
    if tr_v != -&tr_w {
        return Err(HiggsError::TraceIdentityMismatch { lhs: tr_v, rhs: -&tr_w });
    }

    let lhs = rep.sigma_i().mul(&w_td)?.trace()?;
    let iw = FieldScalar::i().times_rat(&rq2(1, (v + w) as i64));
    let rhs = (tr_v.times_rat(&rq2(w as i64, 1)) - tr_w.times_rat(&rq2(v as i64, 1))) * &iw;
    if lhs != rhs {
        return Err(HiggsError::TraceIdentityMismatch { lhs, rhs });
    }
    let collapsed = FieldScalar::i() * &tr_v;
    if lhs != collapsed {
        return Err(HiggsError::TraceIdentityMismatch { lhs, rhs: collapsed });
    }
    Ok((blocks, (lhs, rhs)))
}

/// Evaluates the pairing of Theta with itself three ways and demands exact
/// agreement:
///   A: c * tr(sigma(I) Theta1 Theta2 - Theta1 sigma(I) Theta2)
///   B: (c/2) * tr(sigma(I) ([Theta1, Theta2] - [Theta2, Theta1]))
///   C: c * tr(sigma(I) [theta ^ conj(theta)^T])
pub fn omega_two_routes(
    s: &HiggsSample,
    rep: &AdmissibleRep,
    c_sigma: &Rational,
) -> Result<FieldScalar, HiggsError> {
    let (v, w) = (s.dim_v, s.dim_w);
    if (rep.dim_v(), rep.dim_w()) != (v, w) {
        return Err(HiggsError::DimsMismatch {
            rep_v: rep.dim_v(),
            rep_w: rep.dim_w(),
            v,
            w,
        });
    }
    let si = rep.sigma_i();
    let big1 = theta_c(&s.theta1);
    let big2 = theta_c(&s.theta2);

    let a_mat = si.mul(&big1)?.mul(&big2)?.sub(&big1.mul(si)?.mul(&big2)?)?;
    let a = a_mat.trace()?.times_rat(c_sigma);

    let sym = big1.commutator(&big2)?.sub(&big2.commutator(&big1)?)?;
    let b = si.mul(&sym)?.trace()?.times_rat(c_sigma).times_rat(&rq2(1, 2));

    let dg1 = s.theta1.dagger();
    let dg2 = s.theta2.dagger();
    let w_td = wedge((&s.theta1, &s.theta2), (&dg1, &dg2))?;
    let c = si.mul(&w_td)?.trace()?.times_rat(c_sigma);

    if a != b || a != c {
        return Err(HiggsError::RouteMismatch { a, b, c });
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{build_algebra, Family};
    use crate::scalar::rq;
    use crate::{compute_c_sigma, embed_sp_in_su, standard_rep_su};

    fn su_rep(p: usize, q: usize) -> AdmissibleRep {
        let g = build_algebra(Family::Su { p, q }).unwrap();
        let h = g.hermitian_structure().unwrap();
        standard_rep_su(&g, &h).unwrap()
    }

    fn oracle_sample_11() -> HiggsSample {
        // theta1 = [[0,1],[0,0]], theta2 = i * theta1.
        let mut t1 = MatrixF::zero(2, 2);
        t1.set(0, 1, FieldScalar::one());
        let t2 = t1.scale(&FieldScalar::i());
        HiggsSample::new(1, 1, t1, t2).unwrap()
    }

    #[test]
    fn tau_is_an_involution() {
        let s = make_sample(2, 3, SampleMode::Structured, 11).unwrap();
        assert_eq!(tau(&tau(s.theta1())), *s.theta1());
        // theta_c(theta) = theta - tau(theta).
        assert_eq!(theta_c(s.theta1()), s.theta1().sub(&tau(s.theta1())).unwrap());
    }

    #[test]
    fn theta_c_examples() {
        let mut t = MatrixF::zero(2, 2);
        t.set(0, 1, FieldScalar::one());
        assert_eq!(theta_c(&t), MatrixF::from_int_rows(&[&[0, 1], &[1, 0]]).unwrap());

        let mut t = MatrixF::zero(2, 2);
        t.set(0, 1, FieldScalar::i());
        let i = FieldScalar::i();
        let expected = MatrixF::from_rows(vec![
            vec![FieldScalar::zero(), i.clone()],
            vec![-&i, FieldScalar::zero()],
        ])
        .unwrap();
        assert_eq!(theta_c(&t), expected);
    }

    #[test]
    fn theta_c_is_self_adjoint() {
        for (mode, seed) in [
            (SampleMode::IMultiple, 3),
            (SampleMode::ScalarMultiple, 4),
            (SampleMode::Structured, 5),
        ] {
            let s = make_sample(2, 2, mode, seed).unwrap();
            let big = theta_c(s.theta1());
            assert_eq!(big.dagger(), big);
        }
    }

    #[test]
    fn sample_construction_rejects_bad_inputs() {
        let t = MatrixF::identity(2);
        assert!(matches!(
            HiggsSample::new(1, 1, t.clone(), t.clone()),
            Err(HiggsError::NotOffDiagonal { .. })
        ));
        // beta1 gamma2 = 1 while beta2 gamma1 = 0: no commutation.
        let mut t1 = MatrixF::zero(2, 2);
        t1.set(0, 1, FieldScalar::one());
        let mut t2 = MatrixF::zero(2, 2);
        t2.set(1, 0, FieldScalar::one());
        assert!(matches!(
            HiggsSample::new(1, 1, t1, t2),
            Err(HiggsError::NotCommuting { .. })
        ));
    }

    #[test]
    fn samples_are_deterministic_per_seed() {
        for mode in [SampleMode::IMultiple, SampleMode::ScalarMultiple, SampleMode::Structured] {
            let a = make_sample(2, 2, mode, 99).unwrap();
            let b = make_sample(2, 2, mode, 99).unwrap();
            assert_eq!(a, b);
            let c = make_sample(2, 2, mode, 100).unwrap();
            assert_ne!(a, c, "seeds 99 and 100 coincide for {mode}");
        }
    }

    #[test]
    fn structured_samples_commute_and_are_independent() {
        for seed in [7, 8, 9, 10] {
            let s = make_sample(2, 2, SampleMode::Structured, seed).unwrap();
            assert!(s.theta1().commutator(s.theta2()).unwrap().is_zero());
            assert!(!proportional(s.theta1(), s.theta2()));
        }
        // One-sided fallback for thin splits.
        let s = make_sample(1, 2, SampleMode::Structured, 7).unwrap();
        assert!(s.theta1().commutator(s.theta2()).unwrap().is_zero());
    }

    #[test]
    fn structured_sampling_fails_on_1x1() {
        assert!(matches!(
            make_sample(1, 1, SampleMode::Structured, 7),
            Err(HiggsError::ResampleExhausted { v: 1, w: 1, .. })
        ));
    }

    #[test]
    fn wedge_collapse_passes_on_valid_samples() {
        for (mode, seed) in [
            (SampleMode::IMultiple, 1),
            (SampleMode::ScalarMultiple, 2),
            (SampleMode::Structured, 7),
        ] {
            let s = make_sample(2, 2, mode, seed).unwrap();
            let report = verify_wedge_collapse(&s).unwrap();
            assert!(report.all_pass(), "{mode} seed {seed}: {report:?}");
            assert_eq!(report.checks.len(), 5);
        }
    }

    #[test]
    fn wedge_collapse_flags_noncommuting_input() {
        let mut t1 = MatrixF::zero(2, 2);
        t1.set(0, 1, FieldScalar::one());
        let mut t2 = MatrixF::zero(2, 2);
        t2.set(1, 0, FieldScalar::one());
        let s = HiggsSample::new_unchecked(1, 1, t1, t2);
        let report = verify_wedge_collapse(&s).unwrap();
        assert!(!report.all_pass());
        let failing = report
            .checks
            .iter()
            .find(|c| c.name == "theta-wedge-theta-vanishes")
            .unwrap();
        assert!(!failing.pass);
        assert!(failing.witness.is_some());
    }

    #[test]
    fn curvature_oracle_1_1() {
        let s = oracle_sample_11();
        let rep = su_rep(1, 1);
        let (blocks, (lhs, rhs)) = curvature_and_trace_identity(&s, &rep).unwrap();
        // F = 2i diag(1, -1).
        let two_i = FieldScalar::new(rq(0), rq(0), rq(2), rq(0));
        assert_eq!(blocks.f_v.get(0, 0), &two_i);
        assert_eq!(blocks.f_w.get(0, 0), &-&two_i);
        assert_eq!(lhs, FieldScalar::from_int(-2));
        assert_eq!(rhs, FieldScalar::from_int(-2));
    }

    #[test]
    fn curvature_zero_field() {
        let z = MatrixF::zero(2, 2);
        let s = HiggsSample::new(1, 1, z.clone(), z).unwrap();
        let rep = su_rep(1, 1);
        let (blocks, (lhs, _)) = curvature_and_trace_identity(&s, &rep).unwrap();
        assert!(blocks.f_v.is_zero() && blocks.f_w.is_zero());
        assert!(lhs.is_zero());
    }

    #[test]
    fn curvature_dims_mismatch() {
        let s = oracle_sample_11();
        let rep = su_rep(2, 1);
        assert!(matches!(
            curvature_and_trace_identity(&s, &rep),
            Err(HiggsError::DimsMismatch { .. })
        ));
    }

    #[test]
    fn curvature_block_leak_on_malformed_input() {
        // A diagonal-block theta1 is outside the valid shape; the wedge
        // with an off-diagonal theta2 then lands off-diagonal.
        let t1 = MatrixF::from_int_rows(&[&[1, 0], &[0, -1]]).unwrap();
        let mut t2 = MatrixF::zero(2, 2);
        t2.set(0, 1, FieldScalar::one());
        let s = HiggsSample::new_unchecked(1, 1, t1, t2);
        let rep = su_rep(1, 1);
        assert!(matches!(
            curvature_and_trace_identity(&s, &rep),
            Err(HiggsError::BlockLeak { .. })
        ));
    }

    #[test]
    fn omega_routes_oracle_value() {
        let s = oracle_sample_11();
        let g = build_algebra(Family::Su { p: 1, q: 1 }).unwrap();
        let h = g.hermitian_structure().unwrap();
        let rep = standard_rep_su(&g, &h).unwrap();
        let c = compute_c_sigma(&g, &h, &rep).unwrap();
        let omega = omega_two_routes(&s, &rep, &c).unwrap();
        assert_eq!(omega, FieldScalar::from_int(4));
    }

    #[test]
    fn omega_routes_agree_across_modes_and_reps() {
        let su22 = su_rep(2, 2);
        for (mode, seed) in [
            (SampleMode::IMultiple, 21),
            (SampleMode::ScalarMultiple, 22),
            (SampleMode::Structured, 23),
        ] {
            let s = make_sample(2, 2, mode, seed).unwrap();
            omega_two_routes(&s, &su22, &rq(-2)).unwrap();
        }
        let g = build_algebra(Family::Sp { n: 2 }).unwrap();
        let h = g.hermitian_structure().unwrap();
        let rep = embed_sp_in_su(&g, &h).unwrap();
        let s = make_sample(2, 2, SampleMode::Structured, 24).unwrap();
        omega_two_routes(&s, &rep, &rq(-2)).unwrap();
    }

    #[test]
    fn omega_scale_covariance() {
        let rep = su_rep(2, 2);
        let s = make_sample(2, 2, SampleMode::Structured, 30).unwrap();
        let omega = omega_two_routes(&s, &rep, &rq(-2)).unwrap();
        let lambda = rq2(3, 2);
        let scaled = HiggsSample::new(
            2,
            2,
            s.theta1().scale_rat(&lambda),
            s.theta2().scale_rat(&lambda),
        )
        .unwrap();
        let omega_scaled = omega_two_routes(&scaled, &rep, &rq(-2)).unwrap();
        assert_eq!(omega_scaled, omega.times_rat(&(&lambda * &lambda)));
    }

    #[test]
    fn flatness_trace_on_many_samples() {
        let rep23 = su_rep(2, 3);
        for seed in 0..20u64 {
            let s = make_sample(2, 3, SampleMode::Structured, seed).unwrap();
            let (blocks, _) = curvature_and_trace_identity(&s, &rep23).unwrap();
            let tv = blocks.f_v.trace().unwrap();
            let tw = blocks.f_w.trace().unwrap();
            assert_eq!(tv, -&tw);
        }
    }
}
