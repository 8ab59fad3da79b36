//! The real Lie algebras su(p,q) and sp(2n,R) as explicit matrix algebras.
//!
//! Each algebra carries an ordered basis adapted to the Cartan involution
//! X -> -X^dagger: compact-part elements first, noncompact-part elements
//! after. Structure constants are exact rationals, computed once at build
//! time, and everything downstream (Killing form, complex structure, real
//! rank, metric normalizations) is derived from them without floating point.

use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::linalg;
use crate::matrix::{MatrixError, MatrixF};
use crate::scalar::{rq, rq2, FieldScalar};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("parameter out of range: {what}")]
    ParameterOutOfRange { what: String },
    #[error("basis element {index} is not an eigenvector of the Cartan involution")]
    BasisNotAdapted { index: usize },
    #[error("matrix is not in the span of the basis")]
    NotInSpan,
    #[error("matrix has non-rational basis coordinates")]
    NotRational,
    #[error("no solution: {what}")]
    NoSolution { what: String },
    #[error("maximality certification failed: {what}")]
    MaximalityCertificationFailure { what: String },
    #[error("argument is not in the noncompact part: {what}")]
    ArgumentNotInP { what: String },
    #[error("invariant violated: {what}")]
    InvariantViolation { what: String },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// The two families of Hermitian real forms handled here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    Su { p: usize, q: usize },
    Sp { n: usize },
}

impl Family {
    pub fn matrix_size(&self) -> usize {
        match *self {
            Family::Su { p, q } => p + q,
            Family::Sp { n } => 2 * n,
        }
    }

    pub fn dim(&self) -> usize {
        match *self {
            Family::Su { p, q } => (p + q) * (p + q) - 1,
            Family::Sp { n } => n * (2 * n + 1),
        }
    }

    pub fn dim_k(&self) -> usize {
        match *self {
            Family::Su { p, q } => p * p + q * q - 1,
            Family::Sp { n } => n * n,
        }
    }

    /// Metric normalization constant: p+q for su(p,q), n+1 for sp(2n,R).
    pub fn p_x(&self) -> usize {
        match *self {
            Family::Su { p, q } => p + q,
            Family::Sp { n } => n + 1,
        }
    }

    pub fn real_rank(&self) -> usize {
        match *self {
            Family::Su { p, q } => p.min(q),
            Family::Sp { n } => n,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Su { p, q } => write!(f, "su({p},{q})"),
            Family::Sp { n } => write!(f, "sp({},R)", 2 * n),
        }
    }
}

/// Index split of the adapted basis under the Cartan involution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanDecomposition {
    pub k_indices: Vec<usize>,
    pub p_indices: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MetricKind {
    Killing,
    Normalized,
    Bergman,
}

/// Symmetric rational Gram matrix over a subset of the basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricForm {
    pub kind: MetricKind,
    /// Basis indices the rows/columns refer to, in order.
    pub indices: Vec<usize>,
    pub gram: Vec<Vec<Rational>>,
}

impl MetricForm {
    /// Bilinear evaluation on coordinate vectors in this form's index order.
    pub fn eval_field(&self, x: &[FieldScalar], y: &[FieldScalar]) -> FieldScalar {
        assert_eq!(x.len(), self.indices.len());
        assert_eq!(y.len(), self.indices.len());
        let mut acc = FieldScalar::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || self.gram[i][j].is_zero() {
                    continue;
                }
                acc += &(xi * yj).times_rat(&self.gram[i][j]);
            }
        }
        acc
    }

    pub fn eval_rational(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (i, xi) in x.iter().enumerate() {
            for (j, yj) in y.iter().enumerate() {
                acc += xi * yj * &self.gram[i][j];
            }
        }
        acc
    }
}

/// Complex-structure element, rank data, and the three metrics of one
/// algebra.
#[derive(Debug, Clone)]
pub struct HermitianStructure {
    cartan: CartanDecomposition,
    central: MatrixF,
    p_x: usize,
    rank: usize,
    flat_basis: Vec<MatrixF>,
    killing: MetricForm,
    normalized: MetricForm,
    bergman: MetricForm,
}

impl HermitianStructure {
    pub fn cartan(&self) -> &CartanDecomposition {
        &self.cartan
    }

    /// The element I with [I, k] = 0 on the compact part and ad(I)^2 = -id
    /// on the noncompact part.
    pub fn central(&self) -> &MatrixF {
        &self.central
    }

    pub fn p_x(&self) -> usize {
        self.p_x
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn flat_basis(&self) -> &[MatrixF] {
        &self.flat_basis
    }

    pub fn metric(&self, kind: MetricKind) -> &MetricForm {
        match kind {
            MetricKind::Killing => &self.killing,
            MetricKind::Normalized => &self.normalized,
            MetricKind::Bergman => &self.bergman,
        }
    }

    /// Kaehler form at the base point: omega(X, Y) = g_norm(X, [I, Y]).
    /// Both arguments must lie in the span of the noncompact basis.
    pub fn omega_o(
        &self,
        g: &RealLieAlgebra,
        x: &MatrixF,
        y: &MatrixF,
    ) -> Result<FieldScalar, LieError> {
        let cx = g.p_coords(x)?;
        g.p_coords(y)?;
        let iy = self.central.commutator(y)?;
        let ciy = g.p_coords(&iy)?;
        Ok(self.normalized.eval_field(&cx, &ciy))
    }
}

type ScRow = Vec<(usize, Rational)>;

/// A real form with an ordered, involution-adapted basis and exact
/// structure constants.
pub struct RealLieAlgebra {
    family: Family,
    size: usize,
    dim_k: usize,
    basis: Vec<MatrixF>,
    /// sc[i][j] lists (k, c) with [e_i, e_j] = sum c * e_k, k ascending.
    sc: Vec<Vec<ScRow>>,
    killing: OnceLock<Vec<Vec<Rational>>>,
}

pub fn build_algebra(family: Family) -> Result<RealLieAlgebra, LieError> {
    RealLieAlgebra::build(family)
}

impl RealLieAlgebra {
    pub fn build(family: Family) -> Result<Self, LieError> {
        match family {
            Family::Su { p, q } => {
                if p < 1 || q < 1 {
                    return Err(LieError::ParameterOutOfRange {
                        what: format!("su(p,q) needs p,q >= 1, got p={p}, q={q}"),
                    });
                }
            }
            Family::Sp { n } => {
                if n < 1 {
                    return Err(LieError::ParameterOutOfRange {
                        what: format!("sp(2n,R) needs n >= 1, got n={n}"),
                    });
                }
            }
        }
        let basis = match family {
            Family::Su { p, q } => su_basis(p, q),
            Family::Sp { n } => sp_basis(n),
        };
        debug_assert_eq!(basis.len(), family.dim());
        let mut g = RealLieAlgebra {
            family,
            size: family.matrix_size(),
            dim_k: family.dim_k(),
            basis,
            sc: Vec::new(),
            killing: OnceLock::new(),
        };
        for (idx, e) in g.basis.iter().enumerate() {
            if !g.is_member(e) {
                return Err(LieError::InvariantViolation {
                    what: format!("basis element {idx} violates the real-form condition"),
                });
            }
        }
        g.sc = g.compute_structure_constants()?;
        Ok(g)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn dim_k(&self) -> usize {
        self.dim_k
    }

    pub fn dim_p(&self) -> usize {
        self.dim() - self.dim_k
    }

    pub fn basis(&self) -> &[MatrixF] {
        &self.basis
    }

    pub fn p_x(&self) -> usize {
        self.family.p_x()
    }

    /// Structure constants of [e_i, e_j], ascending in the target index.
    pub fn sc(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.sc[i][j]
    }

    /// Real-form membership in the defining matrix realization.
    pub fn is_member(&self, x: &MatrixF) -> bool {
        if x.rows() != self.size || x.cols() != self.size {
            return false;
        }
        match self.family {
            Family::Su { p, q } => {
                let j = su_signature_matrix(p, q);
                let cond = x.dagger().mul(&j).unwrap().add(&j.mul(x).unwrap()).unwrap();
                cond.is_zero() && x.trace().unwrap().is_zero()
            }
            Family::Sp { n } => {
                let real = (0..self.size).all(|r| {
                    (0..self.size).all(|c| {
                        let v = x.get(r, c);
                        v.c.is_zero() && v.d.is_zero()
                    })
                });
                let om = sp_symplectic_matrix(n);
                let cond =
                    x.transpose().mul(&om).unwrap().add(&om.mul(x).unwrap()).unwrap();
                real && cond.is_zero()
            }
        }
    }

    /// Coordinates of `x` in the basis over the scalar field, verified by
    /// exact reconstruction.
    pub fn coords(&self, x: &MatrixF) -> Result<Vec<FieldScalar>, LieError> {
        if x.rows() != self.size || x.cols() != self.size {
            return Err(LieError::NotInSpan);
        }
        let c = match self.family {
            Family::Su { p, q } => su_coords(p, q, x),
            Family::Sp { n } => sp_coords(n, x),
        };
        if self.linear_combination(&c) == *x {
            Ok(c)
        } else {
            Err(LieError::NotInSpan)
        }
    }

    /// Coordinates as rationals; fails if any coordinate leaves Q.
    pub fn rational_coords(&self, x: &MatrixF) -> Result<Vec<Rational>, LieError> {
        self.coords(x)?
            .into_iter()
            .map(|c| c.as_rational().ok_or(LieError::NotRational))
            .collect()
    }

    /// Coordinates restricted to the noncompact part; any compact component
    /// is rejected.
    pub fn p_coords(&self, x: &MatrixF) -> Result<Vec<FieldScalar>, LieError> {
        let c = self.coords(x).map_err(|_| LieError::ArgumentNotInP {
            what: "matrix is not in the basis span".into(),
        })?;
        if let Some(bad) = (0..self.dim_k).find(|&i| !c[i].is_zero()) {
            return Err(LieError::ArgumentNotInP {
                what: format!("nonzero component on compact basis element {bad}"),
            });
        }
        Ok(c[self.dim_k..].to_vec())
    }

    pub fn linear_combination(&self, coeffs: &[FieldScalar]) -> MatrixF {
        assert_eq!(coeffs.len(), self.dim());
        let mut acc = MatrixF::zero(self.size, self.size);
        for (c, e) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for r in 0..self.size {
                for col in 0..self.size {
                    let v = e.get(r, col);
                    if !v.is_zero() {
                        let mut cur = acc.get(r, col).clone();
                        cur += &(c * v);
                        acc.set(r, col, cur);
                    }
                }
            }
        }
        acc
    }

    fn compute_structure_constants(&self) -> Result<Vec<Vec<ScRow>>, LieError> {
        let dim = self.dim();
        let mut sc = vec![vec![ScRow::new(); dim]; dim];
        for i in 0..dim {
            for j in (i + 1)..dim {
                let b = self.basis[i].commutator(&self.basis[j])?;
                let c = self.rational_coords(&b).map_err(|_| LieError::InvariantViolation {
                    what: format!("bracket of basis elements {i},{j} does not close"),
                })?;
                let row: ScRow =
                    c.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect();
                sc[j][i] = row.iter().map(|(k, v)| (*k, -v.clone())).collect();
                sc[i][j] = row;
            }
        }
        Ok(sc)
    }

    pub fn cartan_decompose(&self) -> Result<CartanDecomposition, LieError> {
        for (index, e) in self.basis.iter().enumerate() {
            let theta = -&e.dagger();
            let fixed = theta == *e;
            let anti = theta == -e;
            if !(fixed ^ anti) {
                return Err(LieError::BasisNotAdapted { index });
            }
            let expected_fixed = index < self.dim_k;
            if fixed != expected_fixed {
                return Err(LieError::BasisNotAdapted { index });
            }
        }
        Ok(CartanDecomposition {
            k_indices: (0..self.dim_k).collect(),
            p_indices: (self.dim_k..self.dim()).collect(),
        })
    }

    fn killing_gram(&self) -> &Vec<Vec<Rational>> {
        self.killing.get_or_init(|| {
            let dim = self.dim();
            let mut g = vec![vec![Rational::zero(); dim]; dim];
            for i in 0..dim {
                for j in i..dim {
                    // tr(ad e_i ad e_j): e_l -> [e_j, e_l] -> [e_i, ...],
                    // read back the e_l coefficient.
                    let mut acc = Rational::zero();
                    for l in 0..dim {
                        for (k, v) in &self.sc[j][l] {
                            if let Some(w) = sc_lookup(&self.sc[i][*k], l) {
                                acc += v * w;
                            }
                        }
                    }
                    g[i][j] = acc.clone();
                    g[j][i] = acc;
                }
            }
            g
        })
    }

    /// Killing form Gram matrix on the full basis, via ad-operator traces.
    pub fn killing_form(&self) -> MetricForm {
        MetricForm {
            kind: MetricKind::Killing,
            indices: (0..self.dim()).collect(),
            gram: self.killing_gram().clone(),
        }
    }

    /// kappa(x, y) for arbitrary elements of the basis span.
    pub fn killing_eval(&self, x: &MatrixF, y: &MatrixF) -> Result<FieldScalar, LieError> {
        let cx = self.coords(x)?;
        let cy = self.coords(y)?;
        let gram = self.killing_gram();
        let mut acc = FieldScalar::zero();
        for (i, xi) in cx.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in cy.iter().enumerate() {
                if yj.is_zero() || gram[i][j].is_zero() {
                    continue;
                }
                acc += &(xi * yj).times_rat(&gram[i][j]);
            }
        }
        Ok(acc)
    }

    /// The generator I of the compact-part center scaled so ad(I)^2 = -id on
    /// the noncompact part, with the sign fixed by the block pattern of the
    /// admissible representations: negative-imaginary on the first diagonal
    /// block for su, positive upper-right block for sp.
    pub fn central_element(
        &self,
        cartan: &CartanDecomposition,
    ) -> Result<MatrixF, LieError> {
        let dk = cartan.k_indices.len();
        // Center of the compact part: v with [sum v_i e_i, e_j] = 0 for all
        // compact e_j. One equation row per (j, target) pair.
        let mut rows = Vec::new();
        for &j in &cartan.k_indices {
            for l in 0..self.dim() {
                let mut row = vec![Rational::zero(); dk];
                let mut nonzero = false;
                for (col, &i) in cartan.k_indices.iter().enumerate() {
                    if let Some(v) = sc_lookup(&self.sc[i][j], l) {
                        row[col] = v.clone();
                        nonzero = true;
                    }
                }
                if nonzero {
                    rows.push(row);
                }
            }
        }
        let kernel = linalg::kernel_basis(rows, dk);
        if kernel.len() != 1 {
            return Err(LieError::NoSolution {
                what: format!(
                    "compact-part center has dimension {}, expected 1",
                    kernel.len()
                ),
            });
        }
        let zc = linalg::primitive_integer_vector(&kernel[0]);
        let mut full = vec![FieldScalar::zero(); self.dim()];
        for (col, &i) in cartan.k_indices.iter().enumerate() {
            full[i] = FieldScalar::from_rational(zc[col].clone());
        }
        let z = self.linear_combination(&full);

        // ad(Z)^2 acts on the first noncompact basis element as a negative
        // rational scalar; the scale factor comes from its square root.
        let ep_index = self.dim_k;
        let ep = &self.basis[ep_index];
        let w = z.commutator(&z.commutator(ep)?)?;
        let wc = self.rational_coords(&w)?;
        let lambda = wc[ep_index].clone();
        for (idx, c) in wc.iter().enumerate() {
            if idx != ep_index && !c.is_zero() {
                return Err(LieError::NoSolution {
                    what: "ad(Z)^2 does not act as a scalar on the noncompact basis".into(),
                });
            }
        }
        if !lambda.is_negative() {
            return Err(LieError::NoSolution {
                what: format!("ad(Z)^2 eigenvalue {lambda} is not negative"),
            });
        }
        let t = FieldScalar::sqrt_of_rational(&(-Rational::one() / lambda)).ok_or_else(
            || LieError::NoSolution {
                what: "scale factor is not a square root in Q(sqrt2)".into(),
            },
        )?;
        let mut i_mat = z.scale(&t);

        let wrong_sign = match self.family {
            // Target: first diagonal block of I purely imaginary negative.
            Family::Su { .. } => i_mat.get(0, 0).c.is_positive(),
            // Target: upper-right block of I positive (real).
            Family::Sp { n } => i_mat.get(0, n).a.is_negative(),
        };
        if wrong_sign {
            i_mat = -&i_mat;
        }
        match self.family {
            Family::Su { .. } => {
                if !i_mat.get(0, 0).c.is_negative() {
                    return Err(LieError::NoSolution {
                        what: "sign pattern of I is degenerate on the first block".into(),
                    });
                }
            }
            Family::Sp { n } => {
                if !i_mat.get(0, n).a.is_positive() {
                    return Err(LieError::NoSolution {
                        what: "sign pattern of I is degenerate on the upper-right block"
                            .into(),
                    });
                }
            }
        }

        for &j in &cartan.k_indices {
            if !i_mat.commutator(&self.basis[j])?.is_zero() {
                return Err(LieError::NoSolution {
                    what: format!("I does not commute with compact basis element {j}"),
                });
            }
        }
        for &a in &cartan.p_indices {
            let twice = i_mat.commutator(&i_mat.commutator(&self.basis[a])?)?;
            if twice != -&self.basis[a] {
                return Err(LieError::NoSolution {
                    what: format!("ad(I)^2 is not -id on noncompact basis element {a}"),
                });
            }
        }
        Ok(i_mat)
    }

    /// Real rank with a maximality certificate: the candidate flat must be
    /// pairwise commuting and equal to its own centralizer inside the
    /// noncompact part.
    pub fn real_rank(
        &self,
        cartan: &CartanDecomposition,
    ) -> Result<(usize, Vec<MatrixF>), LieError> {
        let r = self.family.real_rank();
        let flat_indices: Vec<usize> = match self.family {
            Family::Su { q, .. } => {
                // First real off-diagonal pair element for a = b = t.
                (0..r).map(|t| self.dim_k + 2 * (t * q + t)).collect()
            }
            Family::Sp { n } => {
                // Diagonal symmetric element in the second noncompact group.
                let pa_count = n * (n + 1) / 2;
                (0..r)
                    .map(|t| self.dim_k + pa_count + sym_pair_pos(n, t, t))
                    .collect()
            }
        };
        let flat: Vec<MatrixF> =
            flat_indices.iter().map(|&i| self.basis[i].clone()).collect();
        for a in 0..flat.len() {
            for b in (a + 1)..flat.len() {
                if !flat[a].commutator(&flat[b])?.is_zero() {
                    return Err(LieError::MaximalityCertificationFailure {
                        what: format!("flat candidates {a} and {b} do not commute"),
                    });
                }
            }
        }
        // Centralizer of the flat inside the noncompact part.
        let dp = cartan.p_indices.len();
        let mut rows = Vec::new();
        for &x in &flat_indices {
            for l in 0..self.dim() {
                let mut row = vec![Rational::zero(); dp];
                let mut nonzero = false;
                for (col, &a) in cartan.p_indices.iter().enumerate() {
                    if let Some(v) = sc_lookup(&self.sc[a][x], l) {
                        row[col] = v.clone();
                        nonzero = true;
                    }
                }
                if nonzero {
                    rows.push(row);
                }
            }
        }
        let kernel = linalg::kernel_basis(rows, dp);
        if kernel.len() != r {
            return Err(LieError::MaximalityCertificationFailure {
                what: format!(
                    "centralizer of the flat has dimension {}, expected {r}",
                    kernel.len()
                ),
            });
        }
        Ok((r, flat))
    }

    /// Full Hermitian package: Cartan split, central element, rank, flat,
    /// and the Killing/normalized/Bergman metrics on the noncompact part.
    /// The family's normalization constant is cross-checked against the
    /// Killing trace form on every basis pair.
    pub fn hermitian_structure(&self) -> Result<HermitianStructure, LieError> {
        let cartan = self.cartan_decompose()?;
        let central = self.central_element(&cartan)?;
        let (rank, flat_basis) = self.real_rank(&cartan)?;
        let p_x = self.p_x();
        self.check_killing_closed_form()?;

        let gram_full = self.killing_gram();
        let p_idx = &cartan.p_indices;
        let restrict = |scale: Rational| -> Vec<Vec<Rational>> {
            p_idx
                .iter()
                .map(|&i| p_idx.iter().map(|&j| &gram_full[i][j] * &scale).collect())
                .collect()
        };
        let killing = MetricForm {
            kind: MetricKind::Killing,
            indices: p_idx.clone(),
            gram: restrict(Rational::one()),
        };
        let normalized = MetricForm {
            kind: MetricKind::Normalized,
            indices: p_idx.clone(),
            gram: restrict(rq2(1, p_x as i64)),
        };
        let bergman = MetricForm {
            kind: MetricKind::Bergman,
            indices: p_idx.clone(),
            gram: restrict(rq2(1, 2)),
        };
        Ok(HermitianStructure {
            cartan,
            central,
            p_x,
            rank,
            flat_basis,
            killing,
            normalized,
            bergman,
        })
    }

    /// Jacobi identity on every basis triple, through structure constants.
    pub fn check_jacobi_all(&self) -> Result<(), LieError> {
        let dim = self.dim();
        let mut acc: std::collections::BTreeMap<usize, Rational> = Default::default();
        for i in 0..dim {
            for j in (i + 1)..dim {
                for k in (j + 1)..dim {
                    acc.clear();
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for (l, v) in &self.sc[b][c] {
                            for (m, w) in &self.sc[a][*l] {
                                *acc.entry(*m).or_insert_with(Rational::zero) += v * w;
                            }
                        }
                    }
                    if acc.values().any(|v| !v.is_zero()) {
                        return Err(LieError::InvariantViolation {
                            what: format!("Jacobi identity fails on triple ({i},{j},{k})"),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// The Killing Gram must equal 2 * p_x * tr(e_i e_j) on every pair.
    pub fn check_killing_closed_form(&self) -> Result<(), LieError> {
        let gram = self.killing_gram();
        let factor = rq(2 * self.p_x() as i64);
        for i in 0..self.dim() {
            for j in i..self.dim() {
                let tr = self.basis[i].mul(&self.basis[j])?.trace()?;
                let expected = tr.times_rat(&factor);
                let got = FieldScalar::from_rational(gram[i][j].clone());
                if expected != got {
                    return Err(LieError::InvariantViolation {
                        what: format!(
                            "Killing closed form fails on pair ({i},{j}): ad-trace {} vs scaled trace {}",
                            got, expected
                        ),
                    });
                }
            }
        }
        Ok(())
    }

    /// Killing form negative definite on the compact part, positive definite
    /// on the noncompact part.
    pub fn check_killing_signature(&self) -> Result<(), LieError> {
        let gram = self.killing_gram();
        let neg_k: Vec<Vec<Rational>> = (0..self.dim_k)
            .map(|i| (0..self.dim_k).map(|j| -gram[i][j].clone()).collect())
            .collect();
        if !linalg::is_positive_definite(&neg_k) {
            return Err(LieError::InvariantViolation {
                what: "Killing form is not negative definite on the compact part".into(),
            });
        }
        let p_block: Vec<Vec<Rational>> = (self.dim_k..self.dim())
            .map(|i| (self.dim_k..self.dim()).map(|j| gram[i][j].clone()).collect())
            .collect();
        if !linalg::is_positive_definite(&p_block) {
            return Err(LieError::InvariantViolation {
                what: "Killing form is not positive definite on the noncompact part"
                    .into(),
            });
        }
        Ok(())
    }

    /// kappa([x,y],z) + kappa(y,[x,z]) = 0 over all basis triples.
    pub fn check_ad_invariance(&self) -> Result<(), LieError> {
        let gram = self.killing_gram();
        let dim = self.dim();
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let mut acc = Rational::zero();
                    for (l, v) in &self.sc[i][j] {
                        acc += v * &gram[*l][k];
                    }
                    for (l, v) in &self.sc[i][k] {
                        acc += v * &gram[j][*l];
                    }
                    if !acc.is_zero() {
                        return Err(LieError::InvariantViolation {
                            what: format!("ad-invariance fails on triple ({i},{j},{k})"),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Bracket grading of the adapted basis: compact x compact and
    /// noncompact x noncompact land in the compact part, mixed brackets in
    /// the noncompact part.
    pub fn check_cartan_grading(&self) -> Result<(), LieError> {
        let dim = self.dim();
        for i in 0..dim {
            for j in (i + 1)..dim {
                let compact_target = (i < self.dim_k) == (j < self.dim_k);
                for (k, _) in &self.sc[i][j] {
                    if (*k < self.dim_k) != compact_target {
                        return Err(LieError::InvariantViolation {
                            what: format!("bracket grading fails on pair ({i},{j})"),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Deterministic JSON snapshot: family, basis in canonical scalar text,
    /// structure constants as sparse (i, j, k, value) quadruples with i < j.
    pub fn to_json(&self) -> serde_json::Value {
        let params = match self.family {
            Family::Su { p, q } => json!({ "p": p, "q": q }),
            Family::Sp { n } => json!({ "n": n }),
        };
        let basis: Vec<_> = self.basis.iter().map(|m| m.to_text_rows()).collect();
        let mut triples = Vec::new();
        for i in 0..self.dim() {
            for j in (i + 1)..self.dim() {
                for (k, v) in &self.sc[i][j] {
                    triples.push(json!([i, j, k, v.to_string()]));
                }
            }
        }
        json!({
            "family": self.family.to_string(),
            "params": params,
            "matrix_size": self.size,
            "dim": self.dim(),
            "dim_k": self.dim_k,
            "basis": basis,
            "structure_constants": triples,
        })
    }
}

fn sc_lookup(row: &[(usize, Rational)], target: usize) -> Option<&Rational> {
    row.binary_search_by_key(&target, |t| t.0).ok().map(|ix| &row[ix].1)
}

fn unit(size: usize, r: usize, c: usize, v: FieldScalar) -> MatrixF {
    let mut m = MatrixF::zero(size, size);
    m.set(r, c, v);
    m
}

fn add_unit(m: &mut MatrixF, r: usize, c: usize, v: FieldScalar) {
    let mut cur = m.get(r, c).clone();
    cur += &v;
    m.set(r, c, cur);
}

fn su_signature_matrix(p: usize, q: usize) -> MatrixF {
    let m = p + q;
    MatrixF::from_fn(m, m, |r, c| {
        if r != c {
            FieldScalar::zero()
        } else if r < p {
            FieldScalar::one()
        } else {
            -&FieldScalar::one()
        }
    })
}

fn sp_symplectic_matrix(n: usize) -> MatrixF {
    let mut m = MatrixF::zero(2 * n, 2 * n);
    for j in 0..n {
        m.set(j, n + j, FieldScalar::one());
        m.set(n + j, j, -&FieldScalar::one());
    }
    m
}

/// Adapted basis of su(p,q), compact part first.
///
/// Compact part: for each diagonal block, the pairs E_jk - E_kj and
/// i(E_jk + E_kj) with j < k, then the traceless diagonal chain
/// i(E_jj - E_{j+1,j+1}). Noncompact part: for each (a, b) the pair
/// E_{a,p+b} + E_{p+b,a} and i(E_{a,p+b} - E_{p+b,a}).
fn su_basis(p: usize, q: usize) -> Vec<MatrixF> {
    let m = p + q;
    let i = FieldScalar::i();
    let one = FieldScalar::one();
    let mut basis = Vec::with_capacity(m * m - 1);
    for (lo, hi) in [(0, p), (p, m)] {
        for j in lo..hi {
            for k in (j + 1)..hi {
                let mut k1 = unit(m, j, k, one.clone());
                add_unit(&mut k1, k, j, -&one);
                basis.push(k1);
                let mut k2 = unit(m, j, k, i.clone());
                add_unit(&mut k2, k, j, i.clone());
                basis.push(k2);
            }
        }
    }
    for j in 0..(m - 1) {
        let mut d = unit(m, j, j, i.clone());
        add_unit(&mut d, j + 1, j + 1, -&i);
        basis.push(d);
    }
    for a in 0..p {
        for b in 0..q {
            let mut p1 = unit(m, a, p + b, one.clone());
            add_unit(&mut p1, p + b, a, one.clone());
            basis.push(p1);
            let mut p2 = unit(m, a, p + b, i.clone());
            add_unit(&mut p2, p + b, a, -&i);
            basis.push(p2);
        }
    }
    basis
}

fn su_coords(p: usize, q: usize, x: &MatrixF) -> Vec<FieldScalar> {
    let m = p + q;
    let half = rq2(1, 2);
    let mut c = Vec::with_capacity(m * m - 1);
    for (lo, hi) in [(0, p), (p, m)] {
        for j in lo..hi {
            for k in (j + 1)..hi {
                let xjk = x.get(j, k);
                let xkj = x.get(k, j);
                c.push((xjk - xkj).times_rat(&half));
                c.push(-&(xjk + xkj).times_rat(&half).mul_i());
            }
        }
    }
    let mut t = FieldScalar::zero();
    for j in 0..(m - 1) {
        t -= &x.get(j, j).mul_i();
        c.push(t.clone());
    }
    for a in 0..p {
        for b in 0..q {
            let x1 = x.get(a, p + b);
            let x2 = x.get(p + b, a);
            c.push((x1 + x2).times_rat(&half));
            c.push(-&(x1 - x2).times_rat(&half).mul_i());
        }
    }
    c
}

/// Position of the (j,k) pair, j <= k, in row-major upper-triangle order.
fn sym_pair_pos(n: usize, j: usize, k: usize) -> usize {
    j * (2 * n + 1 - j) / 2 + (k - j)
}

/// Adapted basis of sp(2n,R) in n x n block form [[A, B], [C, -A^T]],
/// compact part first.
///
/// Compact part: block-diagonal antisymmetric pairs, then [[0, S], [-S, 0]]
/// over symmetric units S. Noncompact part: [[S, 0], [0, -S]] then
/// [[0, S], [S, 0]].
fn sp_basis(n: usize) -> Vec<MatrixF> {
    let one = FieldScalar::one();
    let size = 2 * n;
    let mut basis = Vec::with_capacity(n * (2 * n + 1));
    for j in 0..n {
        for k in (j + 1)..n {
            let mut ka = MatrixF::zero(size, size);
            for off in [0, n] {
                add_unit(&mut ka, off + j, off + k, one.clone());
                add_unit(&mut ka, off + k, off + j, -&one);
            }
            basis.push(ka);
        }
    }
    for j in 0..n {
        for k in j..n {
            let mut kb = MatrixF::zero(size, size);
            add_unit(&mut kb, j, n + k, one.clone());
            add_unit(&mut kb, n + j, k, -&one);
            if j != k {
                add_unit(&mut kb, k, n + j, one.clone());
                add_unit(&mut kb, n + k, j, -&one);
            }
            basis.push(kb);
        }
    }
    for j in 0..n {
        for k in j..n {
            let mut pa = MatrixF::zero(size, size);
            add_unit(&mut pa, j, k, one.clone());
            add_unit(&mut pa, n + j, n + k, -&one);
            if j != k {
                add_unit(&mut pa, k, j, one.clone());
                add_unit(&mut pa, n + k, n + j, -&one);
            }
            basis.push(pa);
        }
    }
    for j in 0..n {
        for k in j..n {
            let mut pb = MatrixF::zero(size, size);
            add_unit(&mut pb, j, n + k, one.clone());
            add_unit(&mut pb, n + j, k, one.clone());
            if j != k {
                add_unit(&mut pb, k, n + j, one.clone());
                add_unit(&mut pb, n + k, j, one.clone());
            }
            basis.push(pb);
        }
    }
    basis
}

fn sp_coords(n: usize, x: &MatrixF) -> Vec<FieldScalar> {
    let half = rq2(1, 2);
    let mut c = Vec::with_capacity(n * (2 * n + 1));
    for j in 0..n {
        for k in (j + 1)..n {
            c.push((x.get(j, k) - x.get(k, j)).times_rat(&half));
        }
    }
    for j in 0..n {
        for k in j..n {
            c.push((x.get(j, n + k) - x.get(n + j, k)).times_rat(&half));
        }
    }
    for j in 0..n {
        for k in j..n {
            c.push((x.get(j, k) + x.get(k, j)).times_rat(&half));
        }
    }
    for j in 0..n {
        for k in j..n {
            c.push((x.get(j, n + k) + x.get(n + j, k)).times_rat(&half));
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn su(p: usize, q: usize) -> RealLieAlgebra {
        build_algebra(Family::Su { p, q }).unwrap()
    }

    fn sp(n: usize) -> RealLieAlgebra {
        build_algebra(Family::Sp { n }).unwrap()
    }

    fn diag_i(entries: &[(i64, i64)]) -> MatrixF {
        let n = entries.len();
        MatrixF::from_fn(n, n, |r, c| {
            if r == c {
                FieldScalar::new(rq(0), rq(0), rq2(entries[r].0, entries[r].1), rq(0))
            } else {
                FieldScalar::zero()
            }
        })
    }

    #[test]
    fn dimensions_match_family_formulas() {
        let g = su(1, 1);
        assert_eq!((g.dim(), g.dim_k(), g.dim_p()), (3, 1, 2));
        let g = su(2, 3);
        assert_eq!((g.dim(), g.dim_k(), g.dim_p()), (24, 12, 12));
        let g = sp(1);
        assert_eq!((g.dim(), g.dim_k(), g.dim_p()), (3, 1, 2));
        let g = sp(2);
        assert_eq!((g.dim(), g.dim_k(), g.dim_p()), (10, 4, 6));
    }

    #[test]
    fn rejects_zero_parameters() {
        assert!(matches!(
            build_algebra(Family::Su { p: 0, q: 2 }),
            Err(LieError::ParameterOutOfRange { .. })
        ));
        assert!(matches!(
            build_algebra(Family::Sp { n: 0 }),
            Err(LieError::ParameterOutOfRange { .. })
        ));
    }

    #[test]
    fn cartan_split_is_adapted() {
        for g in [su(1, 1), su(2, 1), su(2, 2), sp(1), sp(2)] {
            let cd = g.cartan_decompose().unwrap();
            assert_eq!(cd.k_indices.len(), g.dim_k());
            assert_eq!(cd.p_indices.len(), g.dim_p());
            g.check_cartan_grading().unwrap();
        }
    }

    #[test]
    fn jacobi_on_all_triples() {
        for g in [su(1, 1), su(2, 1), su(2, 3), sp(1), sp(2)] {
            g.check_jacobi_all().unwrap();
        }
    }

    #[test]
    fn coords_round_trip_on_brackets() {
        let g = su(2, 1);
        for i in 0..g.dim() {
            for j in 0..g.dim() {
                let b = g.basis()[i].commutator(&g.basis()[j]).unwrap();
                let c = g.coords(&b).unwrap();
                assert_eq!(g.linear_combination(&c), b);
            }
        }
    }

    #[test]
    fn coords_reject_outside_span() {
        let g = su(1, 1);
        // Nonzero trace cannot be in su(1,1)'s complex span.
        let m = MatrixF::identity(2);
        assert!(matches!(g.coords(&m), Err(LieError::NotInSpan)));
        let g = sp(1);
        let m = MatrixF::identity(2);
        assert!(matches!(g.coords(&m), Err(LieError::NotInSpan)));
    }

    #[test]
    fn rational_coords_reject_complex_coefficients() {
        let g = su(1, 1);
        let x = g.basis()[0].scale(&FieldScalar::i());
        assert!(matches!(g.rational_coords(&x), Err(LieError::NotRational)));
    }

    #[test]
    fn killing_value_su11() {
        let g = su(1, 1);
        // X = E_01 + E_10 is the first noncompact basis element.
        let x = &g.basis()[1];
        let k = g.killing_eval(x, x).unwrap();
        assert_eq!(k, FieldScalar::from_int(8));
    }

    #[test]
    fn killing_closed_form_small_families() {
        for g in [su(1, 1), su(2, 1), su(1, 2), sp(1), sp(2)] {
            g.check_killing_closed_form().unwrap();
        }
    }

    #[test]
    fn killing_signature_small_families() {
        for g in [su(1, 1), su(2, 1), sp(1), sp(2)] {
            g.check_killing_signature().unwrap();
        }
    }

    #[test]
    fn ad_invariance_small_families() {
        for g in [su(1, 1), su(2, 1), sp(1), sp(2)] {
            g.check_ad_invariance().unwrap();
        }
    }

    #[test]
    fn central_element_su_closed_forms() {
        let g = su(1, 1);
        let i_mat = g.central_element(&g.cartan_decompose().unwrap()).unwrap();
        assert_eq!(i_mat, diag_i(&[(-1, 2), (1, 2)]));

        let g = su(2, 1);
        let i_mat = g.central_element(&g.cartan_decompose().unwrap()).unwrap();
        assert_eq!(i_mat, diag_i(&[(-1, 3), (-1, 3), (2, 3)]));

        let g = su(1, 2);
        let i_mat = g.central_element(&g.cartan_decompose().unwrap()).unwrap();
        assert_eq!(i_mat, diag_i(&[(-2, 3), (1, 3), (1, 3)]));
    }

    #[test]
    fn central_element_sp() {
        let g = sp(1);
        let i_mat = g.central_element(&g.cartan_decompose().unwrap()).unwrap();
        let expected = MatrixF::from_rows(vec![
            vec![FieldScalar::zero(), FieldScalar::from_rational(rq2(1, 2))],
            vec![FieldScalar::from_rational(rq2(-1, 2)), FieldScalar::zero()],
        ])
        .unwrap();
        assert_eq!(i_mat, expected);

        let g = sp(2);
        let i_mat = g.central_element(&g.cartan_decompose().unwrap()).unwrap();
        for &j in &g.cartan_decompose().unwrap().k_indices {
            assert!(i_mat.commutator(&g.basis()[j]).unwrap().is_zero());
        }
    }

    #[test]
    fn real_rank_values() {
        let g = su(2, 3);
        let (r, flat) = g.real_rank(&g.cartan_decompose().unwrap()).unwrap();
        assert_eq!(r, 2);
        assert_eq!(flat.len(), 2);

        let g = sp(3);
        let (r, _) = g.real_rank(&g.cartan_decompose().unwrap()).unwrap();
        assert_eq!(r, 3);

        let g = su(1, 1);
        let (r, _) = g.real_rank(&g.cartan_decompose().unwrap()).unwrap();
        assert_eq!(r, 1);
    }

    #[test]
    fn metric_scaling_chain() {
        for g in [su(1, 1), su(2, 2), sp(2)] {
            let h = g.hermitian_structure().unwrap();
            let kill = h.metric(MetricKind::Killing);
            let norm = h.metric(MetricKind::Normalized);
            let berg = h.metric(MetricKind::Bergman);
            let px = rq(h.p_x() as i64);
            let two = rq(2);
            for i in 0..kill.gram.len() {
                for j in 0..kill.gram.len() {
                    assert_eq!(&kill.gram[i][j] / &px, norm.gram[i][j]);
                    assert_eq!(&kill.gram[i][j] / &two, berg.gram[i][j]);
                    // Bergman = (p_x / 2) * normalized.
                    assert_eq!(&norm.gram[i][j] * &px / &two, berg.gram[i][j]);
                }
            }
        }
    }

    #[test]
    fn omega_su11_oracle() {
        let g = su(1, 1);
        let h = g.hermitian_structure().unwrap();
        let x = g.basis()[1].clone();
        let y = g.basis()[2].clone();
        // [I, Y] = X, g_norm(X, X) = 8 / 2 = 4.
        assert_eq!(h.central().commutator(&y).unwrap(), x);
        assert_eq!(h.omega_o(&g, &x, &y).unwrap(), FieldScalar::from_int(4));
        assert_eq!(h.omega_o(&g, &y, &x).unwrap(), FieldScalar::from_int(-4));
        assert!(h.omega_o(&g, &x, &x).unwrap().is_zero());
    }

    #[test]
    fn omega_rejects_compact_arguments() {
        let g = su(2, 1);
        let h = g.hermitian_structure().unwrap();
        let k = g.basis()[0].clone();
        let p = g.basis()[g.dim_k()].clone();
        assert!(matches!(
            h.omega_o(&g, &k, &p),
            Err(LieError::ArgumentNotInP { .. })
        ));
    }

    #[test]
    fn omega_invariant_under_complex_structure() {
        let g = su(2, 1);
        let h = g.hermitian_structure().unwrap();
        let i_mat = h.central();
        // Deterministic rational combinations of noncompact elements.
        for s in 0..4u64 {
            let mut x = MatrixF::zero(g.size(), g.size());
            let mut y = MatrixF::zero(g.size(), g.size());
            for (off, &a) in h.cartan().p_indices.iter().enumerate() {
                let ca = rq(((s + off as u64) % 5) as i64 - 2);
                let cb = rq(((3 * s + 2 * off as u64) % 7) as i64 - 3);
                x = x.add(&g.basis()[a].scale_rat(&ca)).unwrap();
                y = y.add(&g.basis()[a].scale_rat(&cb)).unwrap();
            }
            let ix = i_mat.commutator(&x).unwrap();
            let iy = i_mat.commutator(&y).unwrap();
            assert_eq!(
                h.omega_o(&g, &ix, &iy).unwrap(),
                h.omega_o(&g, &x, &y).unwrap()
            );
            let ab = h.omega_o(&g, &x, &y).unwrap();
            let ba = h.omega_o(&g, &y, &x).unwrap();
            assert_eq!(ab, -&ba);
        }
    }

    #[test]
    fn p_x_values() {
        assert_eq!(su(2, 3).p_x(), 5);
        assert_eq!(sp(3).p_x(), 4);
    }

    #[test]
    fn hermitian_structure_su23() {
        let g = su(2, 3);
        let h = g.hermitian_structure().unwrap();
        assert_eq!(h.rank(), 2);
        assert_eq!(h.p_x(), 5);
        assert_eq!(h.central(), &diag_i(&[(-3, 5), (-3, 5), (2, 5), (2, 5), (2, 5)]));
    }

    #[test]
    fn json_snapshot_shape() {
        let g = su(1, 1);
        let v = g.to_json();
        assert_eq!(v["family"], "su(1,1)");
        assert_eq!(v["dim"], 3);
        assert_eq!(v["basis"].as_array().unwrap().len(), 3);
        assert!(!v["structure_constants"].as_array().unwrap().is_empty());
    }
}
