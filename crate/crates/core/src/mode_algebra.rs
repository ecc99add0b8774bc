//! Per-momentum matrix realization of the six-component Proca dynamics.
//!
//! Every operator of the theory is diagonal in momentum, so at fixed k it
//! is a 3×3 or 6×6 complex matrix. Units: ħ = c = 1, metric (−,+,+,+).

use crate::error::{Error, Result};
use crate::C64;
use nalgebra::{Matrix2, Matrix3, Matrix6, Vector3, Vector4, Vector6};

pub type Mat2 = Matrix2<C64>;
pub type Mat3 = Matrix3<C64>;
pub type Mat6 = Matrix6<C64>;
pub type Vec3c = Vector3<C64>;
pub type Vec6c = Vector6<C64>;
/// Contravariant four-vector (v⁰, v¹, v², v³).
pub type FourVec = Vector4<C64>;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

/// Smallest |ẑ × k̂| for which ẑ × k̂ defines the first transverse vector.
pub const TRANSVERSE_AXIS_CUTOFF: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicsConfig {
    pub m: f64,
    pub gamma: f64,
    pub kappa: f64,
}

impl PhysicsConfig {
    pub fn new(m: f64, gamma: f64, kappa: f64) -> Result<Self> {
        for (name, v) in [("M", m), ("gamma", gamma), ("kappa", kappa)] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidParameter(format!("{name} must be positive and finite, got {v}")));
            }
        }
        Ok(Self { m, gamma, kappa })
    }

    pub fn with_gamma(&self, gamma: f64) -> Result<Self> {
        Self::new(self.m, gamma, self.kappa)
    }
}

impl Default for PhysicsConfig {
    fn default() -> Self {
        Self { m: 1.0, gamma: 1.0, kappa: 1.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Momentum3(pub Vector3<f64>);

impl Momentum3 {
    pub fn new(kx: f64, ky: f64, kz: f64) -> Self {
        Self(Vector3::new(kx, ky, kz))
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn norm_squared(&self) -> f64 {
        self.0.norm_squared()
    }

    pub fn omega(&self, m: f64) -> f64 {
        (self.0.norm_squared() + m * m).sqrt()
    }

    pub fn r(&self, cfg: &PhysicsConfig) -> f64 {
        (cfg.gamma * self.omega(cfg.m)).sqrt()
    }

    pub fn direction(&self) -> Result<Vector3<f64>> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::DegenerateMomentum);
        }
        Ok(self.0 / n)
    }

    pub fn complex(&self) -> Vec3c {
        self.0.map(|x| C64::new(x, 0.0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Chirality {
    Plus,
    Minus,
}

impl Chirality {
    pub const ALL: [Chirality; 2] = [Chirality::Plus, Chirality::Minus];

    pub fn sign(self) -> f64 {
        match self {
            Chirality::Plus => 1.0,
            Chirality::Minus => -1.0,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_sign(s: i32) -> Result<Self> {
        match s {
            1 => Ok(Chirality::Plus),
            -1 => Ok(Chirality::Minus),
            _ => Err(Error::InvalidParameter(format!("chirality must be ±1, got {s}"))),
        }
    }
}

/// Helicity label; the index order (+1, −1, 0) is used for all [ε][h] arrays.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Helicity {
    Plus,
    Minus,
    Zero,
}

impl Helicity {
    pub const ALL: [Helicity; 3] = [Helicity::Plus, Helicity::Minus, Helicity::Zero];

    pub fn value(self) -> f64 {
        match self {
            Helicity::Plus => 1.0,
            Helicity::Minus => -1.0,
            Helicity::Zero => 0.0,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_value(s: i32) -> Result<Self> {
        match s {
            1 => Ok(Helicity::Plus),
            -1 => Ok(Helicity::Minus),
            0 => Ok(Helicity::Zero),
            _ => Err(Error::InvalidParameter(format!("helicity must be in {{-1,0,1}}, got {s}"))),
        }
    }
}

/// Pauli matrices σ₀..σ₃.
pub fn pauli(i: usize) -> Mat2 {
    match i {
        0 => Mat2::new(ONE, ZERO, ZERO, ONE),
        1 => Mat2::new(ZERO, ONE, ONE, ZERO),
        2 => Mat2::new(ZERO, -I, I, ZERO),
        3 => Mat2::new(ONE, ZERO, ZERO, -ONE),
        _ => panic!("pauli index {i} out of range"),
    }
}

/// λ₀ = I₃ and the Gell-Mann matrices λ₁..λ₈.
pub fn gell_mann(j: usize) -> Mat3 {
    let mut m = Mat3::zeros();
    match j {
        0 => return Mat3::identity(),
        1 => {
            m[(0, 1)] = ONE;
            m[(1, 0)] = ONE;
        }
        2 => {
            m[(0, 1)] = -I;
            m[(1, 0)] = I;
        }
        3 => {
            m[(0, 0)] = ONE;
            m[(1, 1)] = -ONE;
        }
        4 => {
            m[(0, 2)] = ONE;
            m[(2, 0)] = ONE;
        }
        5 => {
            m[(0, 2)] = -I;
            m[(2, 0)] = I;
        }
        6 => {
            m[(1, 2)] = ONE;
            m[(2, 1)] = ONE;
        }
        7 => {
            m[(1, 2)] = -I;
            m[(2, 1)] = I;
        }
        8 => {
            let s = 1.0 / 3f64.sqrt();
            m[(0, 0)] = C64::new(s, 0.0);
            m[(1, 1)] = C64::new(s, 0.0);
            m[(2, 2)] = C64::new(-2.0 * s, 0.0);
        }
        _ => panic!("Gell-Mann index {j} out of range"),
    }
    m
}

/// σ ⊗ B as a 6×6 matrix in the (upper, lower) block layout.
pub fn kron(s: &Mat2, b: &Mat3) -> Mat6 {
    blocks(&(b * s[(0, 0)]), &(b * s[(0, 1)]), &(b * s[(1, 0)]), &(b * s[(1, 1)]))
}

pub fn blocks(a: &Mat3, b: &Mat3, c: &Mat3, d: &Mat3) -> Mat6 {
    let mut m = Mat6::zeros();
    m.fixed_view_mut::<3, 3>(0, 0).copy_from(a);
    m.fixed_view_mut::<3, 3>(0, 3).copy_from(b);
    m.fixed_view_mut::<3, 3>(3, 0).copy_from(c);
    m.fixed_view_mut::<3, 3>(3, 3).copy_from(d);
    m
}

/// Σ_𝔪 = σ_i ⊗ λ_j with 𝔪 = i + 4j.
pub fn sigma_m(m: usize) -> Mat6 {
    assert!(m < 36, "Σ index {m} out of range");
    kron(&pauli(m % 4), &gell_mann(m / 4))
}

/// Σ₃ = σ₃ ⊗ I₃.
pub fn sigma3() -> Mat6 {
    sigma_m(3)
}

/// Spin-one matrices (S_i)_{ab} = −i ε_{iab}.
pub fn spin_matrices() -> [Mat3; 3] {
    [gell_mann(7), -gell_mann(5), gell_mann(2)]
}

/// v·S for a real 3-vector v; acts as w ↦ i v × w.
pub fn dot_s(v: &Vector3<f64>) -> Mat3 {
    let s = spin_matrices();
    s[0] * C64::new(v.x, 0.0) + s[1] * C64::new(v.y, 0.0) + s[2] * C64::new(v.z, 0.0)
}

/// Components of k × S: (k × S)_i = ε_{ijl} k_j S_l.
pub fn cross_s(v: &Vector3<f64>) -> [Mat3; 3] {
    let s = spin_matrices();
    let c = |x: f64| C64::new(x, 0.0);
    [
        s[2] * c(v.y) - s[1] * c(v.z),
        s[0] * c(v.z) - s[2] * c(v.x),
        s[1] * c(v.x) - s[0] * c(v.y),
    ]
}

/// Helicity matrix 𝔥 = k̂·S.
pub fn helicity_matrix(k: &Momentum3) -> Result<Mat3> {
    Ok(dot_s(&k.direction()?))
}

pub fn minkowski(a: &FourVec, b: &FourVec) -> C64 {
    -a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]
}

/// Sesquilinear Minkowski product Σ conj(a^μ) η_μν b^ν.
pub fn minkowski_conj(a: &FourVec, b: &FourVec) -> C64 {
    -a[0].conj() * b[0] + a[1].conj() * b[1] + a[2].conj() * b[2] + a[3].conj() * b[3]
}

pub fn four(t: C64, v: &Vec3c) -> FourVec {
    FourVec::new(t, v[0], v[1], v[2])
}

pub fn spatial(a: &FourVec) -> Vec3c {
    Vec3c::new(a[1], a[2], a[3])
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolarizationSet {
    pub epsilon: Chirality,
    /// Linear polarizations a(k,1), a(k,2) (transverse), a(k,3) (longitudinal).
    pub a: [FourVec; 3],
    /// Circular polarizations u_{ε,h} in helicity index order (+1, −1, 0).
    pub u: [FourVec; 3],
}

/// Deterministic transverse pair: a₁ ∝ ẑ × k̂ (x̂ when k ∥ ẑ), a₂ = k̂ × a₁.
pub fn transverse_pair(khat: &Vector3<f64>) -> (Vector3<f64>, Vector3<f64>) {
    let zc = Vector3::z().cross(khat);
    let a1 = if zc.norm() < TRANSVERSE_AXIS_CUTOFF { Vector3::x() } else { zc.normalize() };
    let a2 = khat.cross(&a1);
    (a1, a2)
}

pub fn polarization_basis(k: &Momentum3, eps: Chirality, cfg: &PhysicsConfig) -> Result<PolarizationSet> {
    let khat = k.direction()?;
    let (a1, a2) = transverse_pair(&khat);
    let m = cfg.m;
    let w = k.omega(m);
    let c = |x: f64| C64::new(x, 0.0);
    let lift = |v: Vector3<f64>| FourVec::new(ZERO, c(v.x), c(v.y), c(v.z));
    let a_1 = lift(a1);
    let a_2 = lift(a2);
    let l = khat * (eps.sign() * w / m);
    let a_3 = FourVec::new(c(k.norm() / m), c(l.x), c(l.y), c(l.z));
    let r2 = std::f64::consts::FRAC_1_SQRT_2;
    let up = (a_1 + a_2 * I) * re(r2);
    let um = (a_1 - a_2 * I) * re(r2);
    Ok(PolarizationSet { epsilon: eps, a: [a_1, a_2, a_3], u: [up, um, a_3] })
}

/// Four-momentum k^μ = (εω, k) of a chirality-ε plane wave.
pub fn four_momentum(k: &Momentum3, eps: Chirality, m: f64) -> FourVec {
    FourVec::new(C64::new(eps.sign() * k.omega(m), 0.0), C64::new(k.0.x, 0.0), C64::new(k.0.y, 0.0), C64::new(k.0.z, 0.0))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Eigensystem {
    /// Right eigenvectors Ψ_{εh}, indexed [ε][h].
    pub psi: [[Vec6c; 3]; 2],
    /// Left eigenvectors Φ_{εh}, indexed [ε][h].
    pub phi: [[Vec6c; 3]; 2],
    /// E_ε = εω.
    pub energies: [f64; 2],
}

pub fn eigensystem(k: &Momentum3, cfg: &PhysicsConfig) -> Result<Eigensystem> {
    let r = k.r(cfg);
    let g = cfg.gamma;
    let kc = k.complex();
    let mut psi = [[Vec6c::zeros(); 3]; 2];
    let mut phi = [[Vec6c::zeros(); 3]; 2];
    for eps in Chirality::ALL {
        let e = eps.sign();
        let pol = polarization_basis(k, eps, cfg)?;
        for h in Helicity::ALL {
            let u = &pol.u[h.index()];
            let uv = spatial(u);
            let u0 = u[0];
            let top = uv * re(1.0 / r + e * r) - kc * u0 * re(g / r);
            let bot = uv * re(1.0 / r - e * r) + kc * u0 * re(g / r);
            psi[eps.index()][h.index()] = stack(&(top * re(0.5)), &(bot * re(0.5)));
            let top = uv * re(r + e / r) - kc * u0 * re(e * g / r);
            let bot = uv * re(r - e / r) - kc * u0 * re(e * g / r);
            phi[eps.index()][h.index()] = stack(&(top * re(0.5)), &(bot * re(0.5)));
        }
    }
    let w = k.omega(cfg.m);
    Ok(Eigensystem { psi, phi, energies: [w, -w] })
}

pub fn stack(a: &Vec3c, b: &Vec3c) -> Vec6c {
    Vec6c::new(a[0], a[1], a[2], b[0], b[1], b[2])
}

pub fn upper(v: &Vec6c) -> Vec3c {
    Vec3c::new(v[0], v[1], v[2])
}

pub fn lower(v: &Vec6c) -> Vec3c {
    Vec3c::new(v[3], v[4], v[5])
}

/// All per-momentum operator matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeMatrixSet {
    pub k: Momentum3,
    pub cfg: PhysicsConfig,
    pub omega: f64,
    pub s: [Mat3; 3],
    pub h: Mat3,
    pub h1: Mat3,
    pub h2: Mat3,
    pub ham: Mat6,
    pub eta_plus: Mat6,
    pub eta_plus_inv: Mat6,
    pub rho: Mat6,
    pub rho_inv: Mat6,
    pub eig: Eigensystem,
}

impl ModeMatrixSet {
    /// Λ = σ₀ ⊗ 𝔥.
    pub fn lambda(&self) -> Mat6 {
        kron(&pauli(0), &self.h)
    }

    pub fn sigma(&self, m: usize) -> Mat6 {
        sigma_m(m)
    }
}

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// H₁ and H₂ with D → ω² and 𝔎·S → k·S.
pub fn h1_h2(k: &Momentum3, cfg: &PhysicsConfig) -> (Mat3, Mat3) {
    let m = cfg.m;
    let g = cfg.gamma;
    let w2 = k.0.norm_squared() + m * m;
    let ks = dot_s(&k.0);
    let ks2 = ks * ks;
    let id = Mat3::identity();
    let a = (id * re(m * m) + ks2) * re(g);
    let b = (id * re(w2) - ks2) * re(1.0 / (g * m * m));
    (a + b, a - b)
}

/// ρ₊ and ρ₋ blocks of the positive square root of η₊ (without the
/// 1/(2M√γ) prefactor).
pub fn rho_blocks(k: &Momentum3, cfg: &PhysicsConfig) -> Result<(Mat3, Mat3)> {
    let h = helicity_matrix(k)?;
    let h2 = h * h;
    let m = cfg.m;
    let g = cfg.gamma;
    let w = k.omega(m);
    let q = w.sqrt();
    let id = Mat3::identity();
    let diff = q - m / q;
    let rp = h2 * re((g * m - 1.0) * diff) + id * re(g * m * m / q + q);
    let rm = h2 * re((g * m + 1.0) * diff) + id * re(g * m * m / q - q);
    Ok((rp, rm))
}

pub fn mode_matrices(k: &Momentum3, cfg: &PhysicsConfig) -> Result<ModeMatrixSet> {
    let h = helicity_matrix(k)?;
    let w = k.omega(cfg.m);
    let (h1, h2) = h1_h2(k, cfg);
    let ham = blocks(&h1, &h2, &-h2, &-h1) * re(0.5);
    let eta_plus = blocks(&h1, &h2, &h2, &h1) * re(0.5 / w);
    let eta_plus_inv = blocks(&h1, &-h2, &-h2, &h1) * re(0.5 / w);
    let (rp, rm) = rho_blocks(k, cfg)?;
    let pref = re(1.0 / (2.0 * cfg.m * cfg.gamma.sqrt()));
    let rho = blocks(&rp, &rm, &rm, &rp) * pref;
    let rho_inv = blocks(&rp, &-rm, &-rm, &rp) * pref;
    Ok(ModeMatrixSet {
        k: *k,
        cfg: *cfg,
        omega: w,
        s: spin_matrices(),
        h,
        h1,
        h2,
        ham,
        eta_plus,
        eta_plus_inv,
        rho,
        rho_inv,
        eig: eigensystem(k, cfg)?,
    })
}

/// Foldy Hamiltonian ρHρ⁻¹; equals ωΣ₃ for every γ.
pub fn foldy_hamiltonian(k: &Momentum3, cfg: &PhysicsConfig) -> Result<Mat6> {
    let mm = mode_matrices(k, cfg)?;
    Ok(mm.rho * mm.ham * mm.rho_inv)
}

/// Σ |a⟩⟨b| over the biorthonormal system with weights w[ε][h].
pub fn spectral_sum(left: &[[Vec6c; 3]; 2], right: &[[Vec6c; 3]; 2], w: &[[C64; 3]; 2]) -> Mat6 {
    let mut m = Mat6::zeros();
    for e in 0..2 {
        for h in 0..3 {
            m += left[e][h] * right[e][h].adjoint() * w[e][h];
        }
    }
    m
}

/// The six complex parameters α_{ε,h} of the general metric.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricParams {
    pub alpha: [[C64; 3]; 2],
}

impl Default for MetricParams {
    fn default() -> Self {
        Self::unit()
    }
}

impl MetricParams {
    pub fn new(alpha: [[C64; 3]; 2]) -> Result<Self> {
        for row in &alpha {
            for a in row {
                if a.norm() == 0.0 || !a.re.is_finite() || !a.im.is_finite() {
                    return Err(Error::InvalidParameter(format!("alpha entries must be nonzero and finite, got {a}")));
                }
            }
        }
        Ok(Self { alpha })
    }

    pub fn unit() -> Self {
        Self { alpha: [[ONE; 3]; 2] }
    }

    /// From six values ordered (+,+1), (+,−1), (+,0), (−,+1), (−,−1), (−,0).
    pub fn from_flat(v: [C64; 6]) -> Result<Self> {
        Self::new([[v[0], v[1], v[2]], [v[3], v[4], v[5]]])
    }

    /// Real positive 𝔞 values with zero phase, same ordering as `from_flat`.
    pub fn from_frak_a(a: [f64; 6]) -> Result<Self> {
        if a.iter().any(|x| !(*x > 0.0)) {
            return Err(Error::InvalidParameter("𝔞 values must be positive".into()));
        }
        Self::from_flat(a.map(|x| C64::new(x.sqrt(), 0.0)))
    }

    pub fn alpha_of(&self, e: Chirality, h: Helicity) -> C64 {
        self.alpha[e.index()][h.index()]
    }

    /// 𝔞_{ε,h} = |α_{ε,h}|².
    pub fn frak_a(&self, e: Chirality, h: Helicity) -> f64 {
        self.alpha_of(e, h).norm_sqr()
    }

    pub fn frak_a_grid(&self) -> [[f64; 3]; 2] {
        let mut g = [[0.0; 3]; 2];
        for e in Chirality::ALL {
            for h in Helicity::ALL {
                g[e.index()][h.index()] = self.frak_a(e, h);
            }
        }
        g
    }

    pub fn is_unit(&self) -> bool {
        self.alpha.iter().flatten().all(|a| *a == ONE)
    }

    /// L^sup_sub = ¼[𝔞₊₁ + sup·𝔞₊₋₁ + sub·𝔞₋₁ + sub·sup·𝔞₋₋₁].
    pub fn l(&self, sup: f64, sub: f64) -> f64 {
        let a = self.frak_a_grid();
        0.25 * (a[0][0] + sup * a[0][1] + sub * a[1][0] + sub * sup * a[1][1])
    }

    /// L⁰_sub = ½[𝔞₊₀ + sub·𝔞₋₀].
    pub fn l0(&self, sub: f64) -> f64 {
        let a = self.frak_a_grid();
        0.5 * (a[0][2] + sub * a[1][2])
    }

    /// Z^ε_± = ½[α_{ε,1} ± α_{ε,−1}].
    pub fn z(&self, e: Chirality, pm: f64) -> C64 {
        let a = &self.alpha[e.index()];
        (a[0] + a[1] * pm) * 0.5
    }

    /// Z̃^ε_± = ½[α⁻¹_{ε,1} ± α⁻¹_{ε,−1}].
    pub fn z_tilde(&self, e: Chirality, pm: f64) -> C64 {
        let a = &self.alpha[e.index()];
        (a[0].inv() + a[1].inv() * pm) * 0.5
    }

    /// F^sup_± = ½[Z^+_sup ± Z^-_sup], sup ∈ {+1, −1}.
    pub fn f(&self, sup: f64, pm: f64) -> C64 {
        (self.z(Chirality::Plus, sup) + self.z(Chirality::Minus, sup) * pm) * 0.5
    }

    pub fn f_tilde(&self, sup: f64, pm: f64) -> C64 {
        (self.z_tilde(Chirality::Plus, sup) + self.z_tilde(Chirality::Minus, sup) * pm) * 0.5
    }

    /// F⁰_± = ½[α₊₀ ± α₋₀].
    pub fn f0(&self, pm: f64) -> C64 {
        (self.alpha[0][2] + self.alpha[1][2] * pm) * 0.5
    }

    pub fn f0_tilde(&self, pm: f64) -> C64 {
        (self.alpha[0][2].inv() + self.alpha[1][2].inv() * pm) * 0.5
    }

    /// Θ_{±,0} = (L^+_± − L^0_±)𝔥² + L^-_± 𝔥 + L^0_±.
    pub fn theta(&self, pm: f64, h: &Mat3) -> Mat3 {
        let h2 = h * h;
        h2 * re(self.l(1.0, pm) - self.l0(pm)) + h * re(self.l(-1.0, pm)) + Mat3::identity() * re(self.l0(pm))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneralMetric {
    pub eta_tilde: Mat6,
    pub a_op: Mat6,
    pub a_inv: Mat6,
    pub rho_tilde: Mat6,
    pub rho_tilde_inv: Mat6,
}

/// η̃₊ = 𝒜†η₊𝒜 and ρ̃ = ρ𝒜 built from 𝒜 = Σ α|Ψ⟩⟨Φ|.
pub fn general_metric(k: &Momentum3, cfg: &PhysicsConfig, params: &MetricParams) -> Result<GeneralMetric> {
    MetricParams::new(params.alpha)?;
    let mm = mode_matrices(k, cfg)?;
    let inv = params.alpha.map(|row| row.map(|a| a.inv()));
    let a_op = spectral_sum(&mm.eig.psi, &mm.eig.phi, &params.alpha);
    let a_inv = spectral_sum(&mm.eig.psi, &mm.eig.phi, &inv);
    let eta_tilde = a_op.adjoint() * mm.eta_plus * a_op;
    Ok(GeneralMetric {
        eta_tilde,
        a_op,
        a_inv,
        rho_tilde: mm.rho * a_op,
        rho_tilde_inv: a_inv * mm.rho_inv,
    })
}

/// The 2×2 M and N matrices of the structural η̃₊ formula, tensored with I₃.
pub fn m_n_matrices(k: &Momentum3, cfg: &PhysicsConfig) -> (Mat6, Mat6) {
    let m = cfg.m;
    let g = cfg.gamma;
    let w = k.omega(m);
    let d = w * w;
    let id = Mat3::identity();
    let mm = blocks(
        &(id * re(g * g * d + 1.0)),
        &(id * re(g * g * d - 1.0)),
        &(id * re(g * g * d - 1.0)),
        &(id * re(g * g * d + 1.0)),
    ) * re(1.0 / (2.0 * g * w));
    let m4 = m.powi(4);
    let nn = blocks(
        &(id * re(g * g * m4 + d)),
        &(id * re(g * g * m4 - d)),
        &(id * re(g * g * m4 - d)),
        &(id * re(g * g * m4 + d)),
    ) * re(1.0 / (2.0 * g * m * m * w));
    (mm, nn)
}

/// η̃₊ from the closed structural formula in L-coefficients.
pub fn eta_tilde_formula(k: &Momentum3, cfg: &PhysicsConfig, p: &MetricParams) -> Result<Mat6> {
    let h = kron(&pauli(0), &helicity_matrix(k)?);
    let h2 = h * h;
    let s3 = sigma3();
    let id = Mat6::identity();
    let (mm, nn) = m_n_matrices(k, cfg);
    let c = |x: f64| re(x);
    let first = mm * c(p.l(1.0, 1.0)) + s3 * c(p.l(1.0, -1.0) - p.l0(-1.0)) - nn * c(p.l0(1.0));
    let second = mm * c(p.l(-1.0, 1.0)) + s3 * c(p.l(-1.0, -1.0));
    Ok(first * h2 + second * h + nn * c(p.l0(1.0)) + s3 * c(p.l0(-1.0)) + id * ZERO)
}

/// 𝒜 (or 𝒜⁻¹ with `tilde`) from the closed formula in F-coefficients.
pub fn a_op_formula(k: &Momentum3, cfg: &PhysicsConfig, p: &MetricParams, tilde: bool) -> Result<Mat6> {
    let h = kron(&pauli(0), &helicity_matrix(k)?);
    let h2 = h * h;
    let s3 = sigma3();
    let id = Mat6::identity();
    let (mm, nn) = m_n_matrices(k, cfg);
    let (f, f0): (&dyn Fn(f64, f64) -> C64, &dyn Fn(f64) -> C64) = if tilde {
        (&|s, q| p.f_tilde(s, q), &|q| p.f0_tilde(q))
    } else {
        (&|s, q| p.f(s, q), &|q| p.f0(q))
    };
    let s3m = s3 * mm;
    let s3n = s3 * nn;
    let first = s3m * f(1.0, -1.0) - s3n * f0(-1.0) + id * (f(1.0, 1.0) - f0(1.0));
    let second = s3m * f(-1.0, -1.0) + id * f(-1.0, 1.0);
    Ok(first * h2 + second * h + s3n * f0(-1.0) + id * f0(1.0))
}

/// ρ̃ (or ρ̃⁻¹ with `inverse`) from the closed block formula.
pub fn rho_tilde_formula(k: &Momentum3, cfg: &PhysicsConfig, p: &MetricParams, inverse: bool) -> Result<Mat6> {
    let h = helicity_matrix(k)?;
    let h2 = h * h;
    let id = Mat3::identity();
    let m = cfg.m;
    let g = cfg.gamma;
    let q = k.omega(m).sqrt();
    let block = |e: f64, ep: Chirality| -> Mat3 {
        let (zp, zm, a0) = if inverse {
            (p.z_tilde(ep, 1.0), p.z_tilde(ep, -1.0), p.alpha_of(ep, Helicity::Zero).inv())
        } else {
            (p.z(ep, 1.0), p.z(ep, -1.0), p.alpha_of(ep, Helicity::Zero))
        };
        (h2 * zp + h * zm) * re(m * (g * q + e / q)) + (id - h2) * (a0 * (g * m * m / q + e * q))
    };
    use Chirality::{Minus, Plus};
    let pref = re(1.0 / (2.0 * m * g.sqrt()));
    let out = if inverse {
        blocks(&block(1.0, Plus), &-block(-1.0, Minus), &-block(-1.0, Plus), &block(1.0, Minus))
    } else {
        blocks(&block(1.0, Plus), &block(-1.0, Plus), &block(-1.0, Minus), &block(1.0, Minus))
    };
    Ok(out * pref)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryMatrices {
    pub p: Mat6,
    pub c: Mat6,
    /// PT acts antilinearly as entrywise complex conjugation.
    pub pt_action: &'static str,
}

pub fn symmetry_matrices(k: &Momentum3, cfg: &PhysicsConfig) -> Result<SymmetryMatrices> {
    let mm = mode_matrices(k, cfg)?;
    Ok(SymmetryMatrices {
        p: sigma3(),
        c: mm.ham * re(1.0 / mm.omega),
        pt_action: "complex conjugation of the six-component vector",
    })
}

/// Case spin matrices S₀ⁱ = ρ⁻¹(σ₀ ⊗ Sⁱ)ρ.
pub fn case_spin_matrix(k: &Momentum3, cfg: &PhysicsConfig) -> Result<[Mat6; 3]> {
    let mm = mode_matrices(k, cfg)?;
    let s = spin_matrices();
    Ok(s.map(|si| mm.rho_inv * kron(&pauli(0), &si) * mm.rho))
}

/// Displayed closed form of the Case spin operator.
pub fn case_spin_formula(k: &Momentum3, cfg: &PhysicsConfig) -> [Mat6; 3] {
    let m = cfg.m;
    let d = k.0.norm_squared() + m * m;
    let q = d.sqrt();
    let s = spin_matrices();
    let ks = dot_s(&k.0);
    let kx = cross_s(&k.0);
    let s0 = pauli(0);
    let s1 = pauli(1);
    let mut out = [Mat6::zeros(); 3];
    for i in 0..3 {
        let a = s[i] * re((d + m * m) / (2.0 * m * q)) - ks * re(k.0[i] * (q - m) / (2.0 * m * q * (q + m)));
        let b = (ks * kx[i] + kx[i] * ks) * C64::new(0.0, 1.0 / (2.0 * m * q));
        out[i] = kron(&s0, &a) + kron(&s1, &b);
    }
    out
}

/// Matrix part of the Case position operator, X₀ − x.
pub fn case_position_formula(k: &Momentum3, cfg: &PhysicsConfig) -> [Mat6; 3] {
    let m = cfg.m;
    let d = k.0.norm_squared() + m * m;
    let q = d.sqrt();
    let s = spin_matrices();
    let ks = dot_s(&k.0);
    let ks2 = ks * ks;
    let kx = cross_s(&k.0);
    let id = Mat3::identity();
    let mut out = [Mat6::zeros(); 3];
    for i in 0..3 {
        let a = kx[i] * re(-(q - m) / (2.0 * m * q * (q + m)));
        let b = id * C64::new(0.0, -k.0[i] / (2.0 * d)) - ks2 * C64::new(0.0, k.0[i] / (m * d * (q + m)))
            + (s[i] * ks + ks * s[i]) * C64::new(0.0, 1.0 / (2.0 * m * q));
        out[i] = kron(&pauli(0), &a) + kron(&pauli(1), &b);
    }
    out
}

/// Frobenius norm of a complex matrix difference, for residual reporting.
pub fn fro<const R: usize, const C: usize>(m: &nalgebra::SMatrix<C64, R, C>) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest entrywise modulus.
pub fn max_abs<const R: usize, const C: usize>(m: &nalgebra::SMatrix<C64, R, C>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Eigenvalues of a Hermitian 6×6 matrix, ascending.
pub fn hermitian_eigenvalues6(m: &Mat6) -> Vec<f64> {
    let herm = (m + m.adjoint()) * re(0.5);
    let mut ev: Vec<f64> = nalgebra::SymmetricEigen::new(herm).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

pub fn hermitian_eigenvalues3(m: &Mat3) -> Vec<f64> {
    let herm = (m + m.adjoint()) * re(0.5);
    let mut ev: Vec<f64> = nalgebra::SymmetricEigen::new(herm).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kz() -> Momentum3 {
        Momentum3::new(0.0, 0.0, 1.0)
    }

    #[test]
    fn longitudinal_vector_on_z_axis() {
        let cfg = PhysicsConfig::default();
        let pol = polarization_basis(&kz(), Chirality::Plus, &cfg).unwrap();
        let a3 = pol.a[2];
        let expect = FourVec::new(re(1.0), ZERO, ZERO, re(2f64.sqrt()));
        assert!((a3 - expect).norm() < 1e-15);
        assert!((minkowski(&a3, &a3) - ONE).norm() < 1e-14);
        let kmu = four_momentum(&kz(), Chirality::Plus, 1.0);
        assert!(minkowski(&kmu, &a3).norm() < 1e-14);
    }

    #[test]
    fn zero_momentum_is_rejected() {
        let cfg = PhysicsConfig::default();
        let k0 = Momentum3::new(0.0, 0.0, 0.0);
        assert_eq!(polarization_basis(&k0, Chirality::Plus, &cfg).unwrap_err(), Error::DegenerateMomentum);
        assert_eq!(mode_matrices(&k0, &cfg).unwrap_err(), Error::DegenerateMomentum);
    }

    #[test]
    fn h1_h2_on_z_axis() {
        let (h1, h2) = h1_h2(&kz(), &PhysicsConfig::default());
        assert!((h1 - Mat3::identity() * re(3.0)).norm() < 1e-14);
        let d = Mat3::from_diagonal(&Vec3c::new(ONE, ONE, -ONE));
        assert!((h2 - d).norm() < 1e-14);
    }

    #[test]
    fn config_rejects_nonpositive() {
        assert!(PhysicsConfig::new(0.0, 1.0, 1.0).is_err());
        assert!(PhysicsConfig::new(1.0, -1.0, 1.0).is_err());
    }

    #[test]
    fn sigma_basis_indexing() {
        assert_eq!(sigma_m(3), kron(&pauli(3), &Mat3::identity()));
        assert_eq!(sigma_m(12), kron(&pauli(0), &gell_mann(3)));
    }

    #[test]
    fn metric_params_reject_zero() {
        let mut a = [[ONE; 3]; 2];
        a[1][2] = ZERO;
        assert!(MetricParams::new(a).is_err());
    }
}
