//! Admissible representations and the pairing constant c_sigma.
//!
//! An admissible representation sends the algebra into a split space
//! C^v + C^w so that the central element I maps to the two-block scalar
//! matrix (i/(v+w)) * diag(-w .. , v ..) and the noncompact part lands in
//! the off-diagonal blocks. su(p,q) uses the defining representation;
//! sp(2n,R) is conjugated into su(n,n) by a fixed unitary T.

use num_traits::Zero;
use serde::Serialize;

use crate::lie::{Family, HermitianStructure, LieError, RealLieAlgebra};
use crate::matrix::{MatrixError, MatrixF};
use crate::scalar::{rq, rq2, FieldScalar};
use crate::{linalg, Rational};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AdmissibleError {
    #[error("wrong family: expected {expected}, got {got}")]
    WrongFamily { expected: &'static str, got: String },
    #[error("not admissible, check ({part}) failed: {detail}")]
    NotAdmissible { part: char, detail: String, witness: MatrixF },
    #[error(
        "pairing ratio disagrees between basis pairs ({},{}) and ({},{})",
        first.0, first.1, second.0, second.1
    )]
    InconsistentRatio { first: (usize, usize), second: (usize, usize) },
    #[error("every pairing trace vanishes; the constant is undetermined")]
    AllDegenerate,
    #[error("embedding check failed: {what}")]
    EmbeddingCheck { what: String },
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// The unitary change of basis carrying sp(2n,R) into su(n,n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingData {
    n: usize,
    s: MatrixF,
    t: MatrixF,
    t_dagger: MatrixF,
}

impl EmbeddingData {
    /// S is the antidiagonal involution, T = (1/sqrt2) [[-iS, S], [iS, S]].
    pub fn new(n: usize) -> Self {
        let mut e = Self::new_unnormalized(n);
        let scale = FieldScalar::sqrt_of_rational(&rq2(1, 2)).unwrap();
        e.t = e.t.scale(&scale);
        e.t_dagger = e.t.dagger();
        e
    }

    /// Test hook: T without the 1/sqrt2 factor, so unitarity fails by a
    /// factor of 2. Used as a negative control.
    pub fn new_unnormalized(n: usize) -> Self {
        let s = MatrixF::from_fn(n, n, |r, c| {
            if r + c == n - 1 {
                FieldScalar::one()
            } else {
                FieldScalar::zero()
            }
        });
        let i = FieldScalar::i();
        let mut t = MatrixF::zero(2 * n, 2 * n);
        t.set_block(0, 0, &s.scale(&-&i));
        t.set_block(0, n, &s);
        t.set_block(n, 0, &s.scale(&i));
        t.set_block(n, n, &s);
        let t_dagger = t.dagger();
        EmbeddingData { n, s, t, t_dagger }
    }

    pub fn s(&self) -> &MatrixF {
        &self.s
    }

    pub fn t(&self) -> &MatrixF {
        &self.t
    }

    pub fn conjugate(&self, x: &MatrixF) -> Result<MatrixF, MatrixError> {
        self.t.mul(x)?.mul(&self.t_dagger)
    }

    /// Closed-form image of [[A, B], [C, -A^T]] under T-conjugation:
    /// (1/2) [[S(A - A^T - i(B-C))S, S(-A - A^T - i(B+C))S],
    ///        [S(-A - A^T + i(B+C))S, S(A - A^T + i(B-C))S]].
    pub fn block_display(&self, x: &MatrixF) -> Result<MatrixF, MatrixError> {
        let n = self.n;
        let a = x.block(0, 0, n, n);
        let b = x.block(0, n, n, n);
        let c = x.block(n, 0, n, n);
        let at = a.transpose();
        let i = FieldScalar::i();
        let half = rq2(1, 2);
        let skew = a.sub(&at)?;
        let sym_neg = (-&a).sub(&at)?;
        let bc_minus = b.sub(&c)?.scale(&i);
        let bc_plus = b.add(&c)?.scale(&i);
        let wrap = |m: &MatrixF| -> Result<MatrixF, MatrixError> {
            Ok(self.s.mul(m)?.mul(&self.s)?.scale_rat(&half))
        };
        let mut out = MatrixF::zero(2 * n, 2 * n);
        out.set_block(0, 0, &wrap(&skew.sub(&bc_minus)?)?);
        out.set_block(0, n, &wrap(&sym_neg.sub(&bc_plus)?)?);
        out.set_block(n, 0, &wrap(&sym_neg.add(&bc_plus)?)?);
        out.set_block(n, n, &wrap(&skew.add(&bc_minus)?)?);
        Ok(out)
    }

    pub fn verify_involution(&self) -> Result<(), AdmissibleError> {
        let ss = self.s.mul(&self.s)?;
        if ss != MatrixF::identity(self.n) {
            return Err(AdmissibleError::EmbeddingCheck {
                what: "S * S is not the identity".into(),
            });
        }
        Ok(())
    }

    pub fn verify_unitary(&self) -> Result<(), AdmissibleError> {
        let tt = self.t.mul(&self.t_dagger)?;
        if tt != MatrixF::identity(2 * self.n) {
            return Err(AdmissibleError::EmbeddingCheck {
                what: "T * T^dagger is not the identity".into(),
            });
        }
        Ok(())
    }

    /// Conjugation agrees with the closed-form block display on every basis
    /// element.
    pub fn verify_block_display(&self, g: &RealLieAlgebra) -> Result<(), AdmissibleError> {
        for (idx, e) in g.basis().iter().enumerate() {
            if self.conjugate(e)? != self.block_display(e)? {
                return Err(AdmissibleError::EmbeddingCheck {
                    what: format!("block display mismatch on basis element {idx}"),
                });
            }
        }
        Ok(())
    }

    /// Conjugation preserves products inside traces on every basis pair.
    pub fn verify_trace_compat(&self, g: &RealLieAlgebra) -> Result<(), AdmissibleError> {
        let images: Vec<MatrixF> = g
            .basis()
            .iter()
            .map(|e| self.conjugate(e))
            .collect::<Result<_, _>>()?;
        for i in 0..images.len() {
            for j in i..images.len() {
                let lhs = images[i].mul(&images[j])?.trace()?;
                let rhs = g.basis()[i].mul(&g.basis()[j])?.trace()?;
                if lhs != rhs {
                    return Err(AdmissibleError::EmbeddingCheck {
                        what: format!("trace compatibility fails on pair ({i},{j})"),
                    });
                }
            }
        }
        Ok(())
    }

    /// Every image satisfies the su(n,n) conditions Y^dagger J + J Y = 0 and
    /// tr Y = 0 with J = diag(1_n, -1_n).
    pub fn verify_images_in_target(&self, g: &RealLieAlgebra) -> Result<(), AdmissibleError> {
        let n = self.n;
        let j = MatrixF::from_fn(2 * n, 2 * n, |r, c| {
            if r != c {
                FieldScalar::zero()
            } else if r < n {
                FieldScalar::one()
            } else {
                -&FieldScalar::one()
            }
        });
        for (idx, e) in g.basis().iter().enumerate() {
            let y = self.conjugate(e)?;
            let cond = y.dagger().mul(&j)?.add(&j.mul(&y)?)?;
            if !cond.is_zero() || !y.trace()?.is_zero() {
                return Err(AdmissibleError::EmbeddingCheck {
                    what: format!("image of basis element {idx} is not in su({n},{n})"),
                });
            }
        }
        Ok(())
    }
}

/// Successful admissibility outcome, embedded in reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissibilityCertificate {
    pub faithful: bool,
    pub sigma_i_pattern: bool,
    pub off_diagonal: bool,
    pub dim_v: usize,
    pub dim_w: usize,
}

/// A representation given by exact images of the basis elements.
#[derive(Debug, Clone)]
pub struct AdmissibleRep {
    family: Family,
    dim_v: usize,
    dim_w: usize,
    images: Vec<MatrixF>,
    sigma_i: MatrixF,
    embedding: Option<EmbeddingData>,
}

/// Defining representation of su(p,q) on C^p + C^q.
pub fn standard_rep_su(
    g: &RealLieAlgebra,
    h: &HermitianStructure,
) -> Result<AdmissibleRep, AdmissibleError> {
    let Family::Su { p, q } = g.family() else {
        return Err(AdmissibleError::WrongFamily {
            expected: "su(p,q)",
            got: g.family().to_string(),
        });
    };
    Ok(AdmissibleRep {
        family: g.family(),
        dim_v: p,
        dim_w: q,
        images: g.basis().to_vec(),
        sigma_i: h.central().clone(),
        embedding: None,
    })
}

/// T-conjugation of sp(2n,R) into su(n,n).
pub fn embed_sp_in_su(
    g: &RealLieAlgebra,
    h: &HermitianStructure,
) -> Result<AdmissibleRep, AdmissibleError> {
    let Family::Sp { n } = g.family() else {
        return Err(AdmissibleError::WrongFamily {
            expected: "sp(2n,R)",
            got: g.family().to_string(),
        });
    };
    AdmissibleRep::from_embedding(g, h, EmbeddingData::new(n))
}

impl AdmissibleRep {
    /// Conjugation representation from explicit embedding data. Public so
    /// negative controls can pass deliberately broken data.
    pub fn from_embedding(
        g: &RealLieAlgebra,
        h: &HermitianStructure,
        embedding: EmbeddingData,
    ) -> Result<AdmissibleRep, AdmissibleError> {
        let Family::Sp { n } = g.family() else {
            return Err(AdmissibleError::WrongFamily {
                expected: "sp(2n,R)",
                got: g.family().to_string(),
            });
        };
        let images = g
            .basis()
            .iter()
            .map(|e| embedding.conjugate(e))
            .collect::<Result<Vec<_>, _>>()?;
        let sigma_i = embedding.conjugate(h.central())?;
        Ok(AdmissibleRep {
            family: g.family(),
            dim_v: n,
            dim_w: n,
            images,
            sigma_i,
            embedding: Some(embedding),
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn dim_w(&self) -> usize {
        self.dim_w
    }

    pub fn sigma_i(&self) -> &MatrixF {
        &self.sigma_i
    }

    pub fn images(&self) -> &[MatrixF] {
        &self.images
    }

    pub fn embedding(&self) -> Option<&EmbeddingData> {
        self.embedding.as_ref()
    }

    /// Negative-control hook: stores -image(I) so the sign pattern check
    /// must fail.
    pub fn flip_sigma_sign(&mut self) {
        self.sigma_i = -&self.sigma_i;
    }

    /// Linear extension of the basis images to any element of the span.
    pub fn apply(&self, g: &RealLieAlgebra, x: &MatrixF) -> Result<MatrixF, AdmissibleError> {
        if g.family() != self.family {
            return Err(AdmissibleError::WrongFamily {
                expected: "the representation's source family",
                got: g.family().to_string(),
            });
        }
        let coords = g.coords(x)?;
        let size = self.dim_v + self.dim_w;
        let mut acc = MatrixF::zero(size, size);
        for (c, img) in coords.iter().zip(&self.images) {
            if !c.is_zero() {
                acc = acc.add(&img.scale(c))?;
            }
        }
        Ok(acc)
    }

    /// Bracket preservation on all basis pairs.
    pub fn check_homomorphism(&self, g: &RealLieAlgebra) -> Result<(), AdmissibleError> {
        for i in 0..g.dim() {
            for j in (i + 1)..g.dim() {
                let lhs = self.apply(g, &g.basis()[i].commutator(&g.basis()[j])?)?;
                let rhs = self.images[i].commutator(&self.images[j])?;
                if lhs != rhs {
                    return Err(AdmissibleError::EmbeddingCheck {
                        what: format!("bracket is not preserved on pair ({i},{j})"),
                    });
                }
            }
        }
        Ok(())
    }
}

/// Full admissibility check: (a) faithfulness, (b) the two-block scalar
/// pattern of the image of I with the split discovered from the matrix, (c)
/// off-diagonal landing of the noncompact part.
pub fn check_admissible(
    g: &RealLieAlgebra,
    rep: &AdmissibleRep,
    central: &MatrixF,
) -> Result<AdmissibilityCertificate, AdmissibleError> {
    // (a) Rational kernel of the span of the images must be trivial.
    let dim = g.dim();
    let size = rep.dim_v + rep.dim_w;
    let mut rows = vec![vec![Rational::zero(); dim]; 4 * size * size];
    for (col, img) in rep.images.iter().enumerate() {
        for r in 0..size {
            for c in 0..size {
                let v = img.get(r, c);
                let base = 4 * (r * size + c);
                rows[base][col] = v.a.clone();
                rows[base + 1][col] = v.b.clone();
                rows[base + 2][col] = v.c.clone();
                rows[base + 3][col] = v.d.clone();
            }
        }
    }
    let kernel = linalg::kernel_basis(rows, dim);
    if let Some(k) = kernel.first() {
        let coeffs: Vec<FieldScalar> =
            k.iter().map(|v| FieldScalar::from_rational(v.clone())).collect();
        let witness = g.linear_combination(&coeffs);
        return Err(AdmissibleError::NotAdmissible {
            part: 'a',
            detail: "representation has a nontrivial kernel".into(),
            witness,
        });
    }

    // (b) The stored image of I must be the image of the supplied central
    // element and must carry the two-block scalar pattern.
    let expected_sigma = rep.apply(g, central)?;
    if expected_sigma != rep.sigma_i {
        return Err(AdmissibleError::NotAdmissible {
            part: 'b',
            detail: "stored image of I differs from the applied image".into(),
            witness: rep.sigma_i.clone(),
        });
    }
    let (dim_v, dim_w) = discover_split(&rep.sigma_i).map_err(|detail| {
        AdmissibleError::NotAdmissible { part: 'b', detail, witness: rep.sigma_i.clone() }
    })?;
    if (dim_v, dim_w) != (rep.dim_v, rep.dim_w) {
        return Err(AdmissibleError::NotAdmissible {
            part: 'b',
            detail: format!(
                "discovered split ({dim_v},{dim_w}) does not match declared ({},{})",
                rep.dim_v, rep.dim_w
            ),
            witness: rep.sigma_i.clone(),
        });
    }

    // (c) Noncompact images live in the off-diagonal blocks.
    for &a in (g.dim_k()..g.dim()).collect::<Vec<_>>().iter() {
        let img = &rep.images[a];
        let diag_ok = img.block(0, 0, dim_v, dim_v).is_zero()
            && img.block(dim_v, dim_v, dim_w, dim_w).is_zero();
        if !diag_ok {
            return Err(AdmissibleError::NotAdmissible {
                part: 'c',
                detail: format!("image of noncompact basis element {a} leaks into a diagonal block"),
                witness: img.clone(),
            });
        }
    }

    Ok(AdmissibilityCertificate {
        faithful: true,
        sigma_i_pattern: true,
        off_diagonal: true,
        dim_v,
        dim_w,
    })
}

/// Reads the (v, w) split off a matrix expected to equal
/// (i/(v+w)) * diag(-w, ..., -w, v, ..., v).
fn discover_split(sigma_i: &MatrixF) -> Result<(usize, usize), String> {
    let size = sigma_i.rows();
    let mut values = Vec::with_capacity(size);
    for r in 0..size {
        for c in 0..size {
            let v = sigma_i.get(r, c);
            if r != c {
                if !v.is_zero() {
                    return Err("image of I is not diagonal".into());
                }
            } else {
                if !v.a.is_zero() || !v.b.is_zero() || !v.d.is_zero() {
                    return Err(format!("diagonal entry {r} is not purely imaginary rational"));
                }
                values.push(v.c.clone());
            }
        }
    }
    let first = values[0].clone();
    let v = values.iter().take_while(|x| **x == first).count();
    if v == size {
        return Err("image of I has a single diagonal value".into());
    }
    let second = values[v].clone();
    if values[v..].iter().any(|x| *x != second) {
        return Err("diagonal of the image of I is not a two-block pattern".into());
    }
    let w = size - v;
    let total = rq((v + w) as i64);
    if first != rq(-(w as i64)) / &total || second != rq(v as i64) / &total {
        return Err(format!(
            "diagonal values ({first}, {second}) do not match (-w/(v+w), v/(v+w)) for split ({v},{w})"
        ));
    }
    Ok((v, w))
}

/// Solves omega(e_a, e_b) = c * tr(sigma(I) [sigma(e_a), sigma(e_b)]) over
/// every noncompact basis pair, demanding one global rational constant.
pub fn compute_c_sigma(
    g: &RealLieAlgebra,
    h: &HermitianStructure,
    rep: &AdmissibleRep,
) -> Result<Rational, AdmissibleError> {
    let p_start = g.dim_k();
    let dim = g.dim();
    let mut ratio: Option<(Rational, (usize, usize))> = None;
    let mut any_nonzero_rhs = false;
    for a in p_start..dim {
        for b in (a + 1)..dim {
            let lhs = h
                .omega_o(g, &g.basis()[a], &g.basis()[b])?
                .as_rational()
                .expect("pairing of basis elements is rational by construction");
            let bracket = rep.images[a].commutator(&rep.images[b])?;
            let rhs = rep
                .sigma_i
                .mul(&bracket)?
                .trace()?
                .as_rational()
                .expect("trace pairing of basis elements is rational by construction");
            if rhs.is_zero() {
                if !lhs.is_zero() {
                    let first = ratio.map(|r| r.1).unwrap_or((a, b));
                    return Err(AdmissibleError::InconsistentRatio {
                        first,
                        second: (a, b),
                    });
                }
                continue;
            }
            any_nonzero_rhs = true;
            let c = lhs / rhs;
            match &ratio {
                None => ratio = Some((c, (a, b))),
                Some((c0, pair0)) => {
                    if *c0 != c {
                        return Err(AdmissibleError::InconsistentRatio {
                            first: *pair0,
                            second: (a, b),
                        });
                    }
                }
            }
        }
    }
    if !any_nonzero_rhs {
        return Err(AdmissibleError::AllDegenerate);
    }
    Ok(ratio.unwrap().0)
}
