//! Operator calculus on matrix entries `f_{π,A}(x) = Tr(π(x) A)`.
//!
//! A left-invariant operator `L` built from the fields `X̃` acts on matrix
//! entries by `L f_{π,A} = f_{π, L_π A}`, where `L_π` is the same polynomial
//! in the generator matrices. `|f_{π,A}|²` is the matrix entry
//! `f_{π⊗π̄, A⊗Ā}` of the tensor-conjugate representation, so norms in
//! `L²(ρ_s)` and `L²(μ_{s,τ})` reduce to heat operators evaluated at the
//! identity, i.e. traces of matrix exponentials.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{self, conj, expm, identity, kron, CMat};
use crate::params::{ComplexTime, MetricTriple, TransformParams};
use crate::su2::{casimir, su2_basis, GroupElement, Irrep};
use crate::C64;

/// Generator images `M(e_a)` and `M(J e_a)` of a real representation of `sl(2,C)`.
pub trait LieAction {
    fn dim(&self) -> usize;
    /// `M(e_a)`
    fn x(&self, a: usize) -> &CMat;
    /// `M(J e_a)`
    fn y(&self, a: usize) -> &CMat;
}

/// The holomorphic representation `π_ℂ` itself: `M(J e_a) = i π_*(e_a)`.
#[derive(Debug, Clone)]
pub struct HolomorphicRep {
    base: Irrep,
    y: [CMat; 3],
}

impl HolomorphicRep {
    pub fn new(base: &Irrep) -> Self {
        let y = [0, 1, 2].map(|a| base.generator(a) * C64::i());
        Self { base: base.clone(), y }
    }

    pub fn base(&self) -> &Irrep {
        &self.base
    }
}

impl LieAction for HolomorphicRep {
    fn dim(&self) -> usize {
        self.base.dim()
    }
    fn x(&self, a: usize) -> &CMat {
        self.base.generator(a)
    }
    fn y(&self, a: usize) -> &CMat {
        &self.y[a]
    }
}

/// `π_ℂ ⊗ π̄_ℂ` on `C^n ⊗ C^n`, with
/// `M(ξ) = π_ℂ*(ξ) ⊗ I + I ⊗ conj(π_ℂ*(ξ))` (entrywise conjugate).
#[derive(Debug, Clone)]
pub struct TensorConjRep {
    base: Irrep,
    x: [CMat; 3],
    y: [CMat; 3],
}

impl TensorConjRep {
    pub fn new(base: &Irrep) -> Self {
        let n = base.dim();
        let id = identity(n);
        let lift = |g: &CMat| kron(g, &id) + kron(&id, &conj(g));
        let x = [0, 1, 2].map(|a| lift(base.generator(a)));
        let y = [0, 1, 2].map(|a| lift(&(base.generator(a) * C64::i())));
        Self { base: base.clone(), x, y }
    }

    pub fn base(&self) -> &Irrep {
        &self.base
    }

    /// `M(ξ)` for an arbitrary `ξ ∈ sl(2,C)`, real-linear in `ξ`.
    pub fn generator(&self, xi: &crate::su2::AlgebraElement) -> CMat {
        let p = self.base.algebra(xi);
        let id = identity(self.base.dim());
        kron(&p, &id) + kron(&id, &conj(&p))
    }

    /// Largest `‖M([ξ,η]) − [M(ξ), M(η)]‖` over the real basis `{e_a, J e_a}`.
    pub fn bracket_residual(&self) -> f64 {
        let e = su2_basis();
        let real_basis: Vec<_> = e.iter().flat_map(|b| [*b, b.j()]).collect();
        let mut worst: f64 = 0.0;
        for xi in &real_basis {
            for eta in &real_basis {
                let lhs = self.generator(&xi.bracket(eta));
                let rhs = linalg::commutator(&self.generator(xi), &self.generator(eta));
                worst = worst.max(linalg::op_norm(&(lhs - rhs)));
            }
        }
        worst
    }
}

impl LieAction for TensorConjRep {
    fn dim(&self) -> usize {
        self.base.dim() * self.base.dim()
    }
    fn x(&self, a: usize) -> &CMat {
        &self.x[a]
    }
    fn y(&self, a: usize) -> &CMat {
        &self.y[a]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OperatorLabel {
    DeltaK,
    Del2,
    DelBar2,
    DeltaSTau { s: f64, t: f64, u: f64 },
    Labc { a: f64, b: f64, c: f64 },
}

impl fmt::Display for OperatorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::DeltaK => write!(f, "Δ_k"),
            Self::Del2 => write!(f, "∂²"),
            Self::DelBar2 => write!(f, "∂̄²"),
            Self::DeltaSTau { s, t, u } => write!(f, "Δ_{{{s},{t}{u:+}i}}"),
            Self::Labc { a, b, c } => write!(f, "L_{{{a},{b},{c}}}"),
        }
    }
}

/// A left-invariant differential operator, represented by its action on the
/// endomorphism slot of matrix entries.
#[derive(Debug, Clone)]
pub struct LiftedOperator {
    pub matrix: CMat,
    pub label: OperatorLabel,
}

impl LiftedOperator {
    pub fn commutator_norm(&self, other: &Self) -> f64 {
        linalg::op_norm(&linalg::commutator(&self.matrix, &other.matrix))
    }
}

/// `Δ_𝔨 = Σ_a M(e_a)²`.
pub fn lift_delta_k<R: LieAction>(r: &R) -> LiftedOperator {
    let n = r.dim();
    let matrix = (0..3).fold(CMat::zeros(n, n), |acc, a| acc + r.x(a) * r.x(a));
    LiftedOperator { matrix, label: OperatorLabel::DeltaK }
}

fn holo_field<R: LieAction>(r: &R, a: usize, sign: f64) -> CMat {
    // ½(M(e_a) ∓ i M(J e_a))
    (r.x(a) + r.y(a) * C64::new(0.0, sign)) * C64::from(0.5)
}

/// `∂² = Σ_a (½(M(e_a) − i M(J e_a)))²`.
pub fn lift_del2<R: LieAction>(r: &R) -> LiftedOperator {
    let n = r.dim();
    let matrix = (0..3).fold(CMat::zeros(n, n), |acc, a| {
        let d = holo_field(r, a, -1.0);
        acc + &d * &d
    });
    LiftedOperator { matrix, label: OperatorLabel::Del2 }
}

/// `∂̄² = Σ_a (½(M(e_a) + i M(J e_a)))²`.
pub fn lift_delbar2<R: LieAction>(r: &R) -> LiftedOperator {
    let n = r.dim();
    let matrix = (0..3).fold(CMat::zeros(n, n), |acc, a| {
        let d = holo_field(r, a, 1.0);
        acc + &d * &d
    });
    LiftedOperator { matrix, label: OperatorLabel::DelBar2 }
}

/// `Δ_{s,τ} = Σ_a [(s − t/2) M(e_a)² + (t/2) M(Je_a)² − u M(e_a) M(Je_a)]`.
pub fn lift_delta_stau<R: LieAction>(r: &R, p: &TransformParams) -> Result<LiftedOperator> {
    p.check()?;
    let (s, t, u) = (p.s, p.t(), p.u());
    let n = r.dim();
    let mut matrix = CMat::zeros(n, n);
    for a in 0..3 {
        let (x, y) = (r.x(a), r.y(a));
        matrix += x * x * C64::from(s - t / 2.0) + y * y * C64::from(t / 2.0) - x * y * C64::from(u);
    }
    Ok(LiftedOperator { matrix, label: OperatorLabel::DeltaSTau { s, t, u } })
}

/// Laplacian of `⟨·,·⟩_{a,b,c}`: `Σ_{ij} (q⁻¹)_{ij} Ṽ_i Ṽ_j` with
/// `q` block-diagonal in `[[a, c], [c, b]]`.
pub fn lift_labc<R: LieAction>(r: &R, m: &MetricTriple) -> Result<LiftedOperator> {
    m.check()?;
    let det = m.det();
    let n = r.dim();
    let mut matrix = CMat::zeros(n, n);
    for a in 0..3 {
        let (x, y) = (r.x(a), r.y(a));
        matrix += (x * x * C64::from(m.b) + y * y * C64::from(m.a) - (x * y + y * x) * C64::from(m.c))
            / C64::from(det);
    }
    Ok(LiftedOperator { matrix, label: OperatorLabel::Labc { a: m.a, b: m.b, c: m.c } })
}

/// `‖s Δ_𝔨 − Δ_{s,τ} − τ ∂² − τ̄ ∂̄²‖` (spectral norm).
pub fn decomposition_residual<R: LieAction>(r: &R, p: &TransformParams) -> Result<f64> {
    let tau = p.tau.as_complex();
    let dk = lift_delta_k(r).matrix;
    let dst = lift_delta_stau(r, p)?.matrix;
    let d2 = lift_del2(r).matrix;
    let db2 = lift_delbar2(r).matrix;
    let resid = dk * C64::from(p.s) - dst - d2 * tau - db2 * tau.conj();
    Ok(linalg::op_norm(&resid))
}

/// Largest pairwise commutator norm among `Δ_𝔨, ∂², ∂̄², Δ_{s,τ}`.
pub fn commutator_suite<R: LieAction>(r: &R, p: &TransformParams) -> Result<f64> {
    let ops = [lift_delta_k(r), lift_del2(r), lift_delbar2(r), lift_delta_stau(r, p)?];
    let mut worst: f64 = 0.0;
    for i in 0..ops.len() {
        for j in i + 1..ops.len() {
            worst = worst.max(ops[i].commutator_norm(&ops[j]));
        }
    }
    Ok(worst)
}

/// The matrix entry `f_{π,A}`; evaluated through the holomorphic representation.
#[derive(Debug, Clone)]
pub struct MatrixEntry {
    pub rep: Irrep,
    pub a: CMat,
}

impl MatrixEntry {
    pub fn new(rep: Irrep, a: CMat) -> Result<Self> {
        let n = rep.dim();
        if a.nrows() != n || a.ncols() != n {
            return Err(Error::DimensionMismatch { expected: n, got: a.nrows() });
        }
        Ok(Self { rep, a })
    }

    /// The constant function 1 (trivial representation, `A = 1`).
    pub fn constant_one() -> Self {
        Self { rep: crate::su2::irrep(1), a: identity(1) }
    }

    /// `f(z) = Tr(π_ℂ(z) A)`.
    pub fn eval(&self, z: &GroupElement) -> C64 {
        (self.rep.group(z) * &self.a).trace()
    }

    pub fn scale(&self, c: C64) -> Self {
        Self { rep: self.rep.clone(), a: &self.a * c }
    }

    /// `|f|²` as the matrix entry `(π ⊗ π̄, A ⊗ Ā)` of the tensor-conjugate representation.
    pub fn abs_sq_endomorphism(&self) -> CMat {
        kron(&self.a, &conj(&self.a))
    }
}

/// `M_τ f_{π,A} = f_{π_ℂ, e^{τ C_π/2} A}`.
pub fn transform_me(f: &MatrixEntry, tau: C64) -> MatrixEntry {
    let c = casimir(&f.rep);
    let a = expm(&(c * (tau / 2.0))) * &f.a;
    MatrixEntry { rep: f.rep.clone(), a }
}

/// Preimage of a holomorphic matrix entry: `A' = e^{−τ C_π/2} A`.
pub fn surjectivity_witness(big_f: &MatrixEntry, tau: C64) -> MatrixEntry {
    transform_me(big_f, -tau)
}

/// `‖f‖²_{L²(K, ρ_s)} = Tr(e^{s C_σ/2} (A ⊗ Ā))`, `C_σ = Δ_𝔨` on `π ⊗ π̄`.
pub fn norm_sq_rho_s(f: &MatrixEntry, s: f64) -> Result<f64> {
    if s <= 0.0 {
        return Err(Error::NonPositive { name: "s", value: s });
    }
    let sigma = TensorConjRep::new(&f.rep);
    let c = lift_delta_k(&sigma).matrix;
    let v = (expm(&(c * C64::from(s / 2.0))) * f.abs_sq_endomorphism()).trace();
    real_part_checked(v)
}

/// `‖M_τ f‖²_{L²(K_ℂ, μ_{s,τ})} = Tr(e^{Δ_{s,τ}/2} e^{τ∂²/2} e^{τ̄∂̄²/2} (A ⊗ Ā))`.
pub fn norm_sq_mu_stau(f: &MatrixEntry, p: &TransformParams) -> Result<f64> {
    let v = norm_sq_mu_stau_ordered(f, p, false)?;
    real_part_checked(v)
}

/// The same trace with the three exponentials applied in reverse order.
/// The operators commute, so both orders agree.
pub fn norm_sq_mu_stau_ordered(f: &MatrixEntry, p: &TransformParams, reversed: bool) -> Result<C64> {
    let sigma = TensorConjRep::new(&f.rep);
    let tau = p.tau.as_complex();
    let e1 = expm(&(lift_delta_stau(&sigma, p)?.matrix * C64::from(0.5)));
    let e2 = expm(&(lift_del2(&sigma).matrix * (tau / 2.0)));
    let e3 = expm(&(lift_delbar2(&sigma).matrix * (tau.conj() / 2.0)));
    let prod = if reversed { e3 * e2 * e1 } else { e1 * e2 * e3 };
    Ok((prod * f.abs_sq_endomorphism()).trace())
}

/// `E_{μ_{s,τ}}[f_{σ,B}]` for an arbitrary endomorphism `B` of the
/// tensor-conjugate space: `Tr(e^{Δ_{s,τ}/2} B)`.
pub fn mu_stau_expectation(rep: &Irrep, b: &CMat, p: &TransformParams) -> Result<C64> {
    let sigma = TensorConjRep::new(rep);
    let e = expm(&(lift_delta_stau(&sigma, p)?.matrix * C64::from(0.5)));
    Ok((e * b).trace())
}

/// `E_{μ_{s,τ}}[Tr(Z Z*)]` from the defining representation:
/// `Tr(ZZ*) = Σ_{ij} |Z_{ij}|² = Σ_{ij} |f_{π₂, E_{ji}}|²`.
pub fn exact_trace_zzstar(p: &TransformParams) -> Result<f64> {
    let rep = crate::su2::irrep(2);
    let mut b = CMat::zeros(4, 4);
    for i in 0..2 {
        for j in 0..2 {
            let mut e = CMat::zeros(2, 2);
            e[(j, i)] = C64::from(1.0);
            b += kron(&e, &conj(&e));
        }
    }
    real_part_checked(mu_stau_expectation(&rep, &b, p)?)
}

const IMAG_TOL: f64 = 1e-10;

fn real_part_checked(v: C64) -> Result<f64> {
    if v.im.abs() > IMAG_TOL * v.re.abs().max(1.0) {
        return Err(Error::Invalid(format!("norm has imaginary residue {:e}", v.im)));
    }
    Ok(v.re)
}

/// Checks that `t = Re τ` is positive; used where only `τ` is supplied.
pub fn check_tau(tau: ComplexTime) -> Result<()> {
    tau.check_right_half_plane()
}
