//! Proca fields as finite superpositions of definite-chirality, definite-helicity plane waves.
//!
//! A field is A = Σ_j Σ_{εh} c_{εh}(k_j) N_{εh}(k_j) u_{εh}(k_j) φ_{k_j}(x) e^{−iεω x⁰}
//! with φ_k = (2π)^{−3/2} e^{ik·x}. Mode amplitudes (four-vectors per k) never include the
//! (2π)^{−3/2} factor; it only appears in pointwise evaluation.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::mode_algebra::{
    minkowski_conj, polarization_basis, spatial, stack, Chirality, FourVec, Helicity, MetricParams,
    Momentum3, PhysicsConfig, PolarizationSet, Vec3c, Vec6c,
};
use crate::C64;

const ZERO: C64 = C64::new(0.0, 0.0);

/// (2π)^{−3/2}.
pub fn plane_wave_prefactor() -> f64 {
    (2.0 * std::f64::consts::PI).powf(-1.5)
}

/// Convention for the N_{εh}(k) factors of the basis solutions.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum Normalization {
    /// N = 1.
    #[default]
    Unit,
    /// |N|² = 2M/(κ𝔞_{εh}), so that the 𝔞-inner product of a basis mode is 2ω.
    Relativistic(MetricParams),
}

impl Normalization {
    pub fn factor(&self, cfg: &PhysicsConfig, e: Chirality, h: Helicity) -> f64 {
        match self {
            Normalization::Unit => 1.0,
            Normalization::Relativistic(p) => (2.0 * cfg.m / (cfg.kappa * p.frak_a(e, h))).sqrt(),
        }
    }
}

/// Coefficients c[ε][h] at one momentum.
pub type Coeffs = [[C64; 3]; 2];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mode {
    pub k: Momentum3,
    pub c: Coeffs,
}

/// Bit pattern of a momentum, for exact matching of modes between fields.
pub fn momentum_key(k: &Momentum3) -> [u64; 3] {
    // Normalize −0.0 so that it matches +0.0.
    [k.0.x + 0.0, k.0.y + 0.0, k.0.z + 0.0].map(f64::to_bits)
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteModeField {
    pub cfg: PhysicsConfig,
    pub modes: Vec<Mode>,
    pub normalization: Normalization,
}

/// One (k, ε) plane-wave component: A^μ = amp^μ e^{i k_μ x^μ} with covariant k_μ = (−εω, k).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneWave {
    pub k: Momentum3,
    pub eps: Chirality,
    pub omega: f64,
    /// Amplitude at x⁰ = 0, including (2π)^{−3/2}.
    pub amp: FourVec,
}

impl PlaneWave {
    pub fn k_lower(&self) -> [f64; 4] {
        [-self.eps.sign() * self.omega, self.k.0.x, self.k.0.y, self.k.0.z]
    }

    pub fn phase(&self, x: &[f64; 4]) -> C64 {
        let kl = self.k_lower();
        let arg: f64 = (0..4).map(|m| kl[m] * x[m]).sum();
        C64::from_polar(1.0, arg)
    }
}

/// Value and first/second covariant derivatives ∂_μ, ∂_μ∂_ν of a four-vector field at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub val: FourVec,
    pub d: [FourVec; 4],
    pub dd: [[FourVec; 4]; 4],
}

/// Evaluates Σ amp(w) e^{ik·x} and its derivatives exactly, mode by mode.
pub fn jet<F: Fn(&PlaneWave) -> FourVec>(waves: &[PlaneWave], x: &[f64; 4], amp: F) -> Jet {
    let mut j = Jet { val: FourVec::zeros(), d: [FourVec::zeros(); 4], dd: [[FourVec::zeros(); 4]; 4] };
    for w in waves {
        let a = amp(w) * w.phase(x);
        let kl = w.k_lower();
        j.val += a;
        for m in 0..4 {
            j.d[m] += a * C64::new(0.0, kl[m]);
            for n in 0..4 {
                j.dd[m][n] += a * C64::new(-kl[m] * kl[n], 0.0);
            }
        }
    }
    j
}

/// Covariant initial data (A^μ, Ȧ^μ) at one momentum, without the (2π)^{−3/2} factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeData {
    pub k: Momentum3,
    pub a: FourVec,
    pub adot: FourVec,
}

impl ModeData {
    /// Constraint residuals 𝔏[A] = Ȧ⁰ + ik·A and 𝔏[Ȧ] = Ä⁰ + ik·Ȧ with Ä⁰ = −ω²A⁰.
    pub fn constraint_residuals(&self, m: f64) -> (C64, C64) {
        let kc = self.k.complex();
        let i = C64::new(0.0, 1.0);
        let w2 = self.k.norm_squared() + m * m;
        let r1 = self.adot[0] + i * kc.dot(&spatial(&self.a));
        let r2 = -self.a[0] * w2 + i * kc.dot(&spatial(&self.adot));
        (r1, r2)
    }

    /// Electric field E = −Ȧ − ikA⁰.
    pub fn electric(&self) -> Vec3c {
        -spatial(&self.adot) - self.k.complex() * (C64::new(0.0, 1.0) * self.a[0])
    }

    /// Ė = ω²A − k(k·A).
    pub fn electric_dot(&self, m: f64) -> Vec3c {
        let a = spatial(&self.a);
        let kc = self.k.complex();
        a * C64::new(self.k.norm_squared() + m * m, 0.0) - kc * kc.dot(&a)
    }

    /// Free evolution by Δ with the cos/sin propagator.
    pub fn evolve(&self, m: f64, dt: f64) -> Self {
        let w = self.k.omega(m);
        let (s, c) = (w * dt).sin_cos();
        let re = |x: f64| C64::new(x, 0.0);
        ModeData {
            k: self.k,
            a: self.a * re(c) + self.adot * re(s / w),
            adot: self.a * re(-w * s) + self.adot * re(c),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FieldInitialData {
    pub cfg: PhysicsConfig,
    pub x0: f64,
    pub modes: Vec<ModeData>,
}

impl FieldInitialData {
    /// Largest constraint residual relative to the largest data scale over all modes.
    pub fn constraint_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        let mut scale: f64 = 0.0;
        for md in &self.modes {
            let w = md.k.omega(self.cfg.m);
            scale = scale.max(md.a.norm() * w + md.adot.norm());
            let (r1, r2) = md.constraint_residuals(self.cfg.m);
            worst = worst.max(r1.norm()).max(r2.norm() / w);
        }
        if scale > 0.0 {
            worst / scale
        } else {
            0.0
        }
    }

    pub fn evolve(&self, dt: f64) -> Self {
        FieldInitialData {
            cfg: self.cfg,
            x0: self.x0 + dt,
            modes: self.modes.iter().map(|md| md.evolve(self.cfg.m, dt)).collect(),
        }
    }

    pub fn evaluate(&self, x: &[f64; 3]) -> FourVec {
        let mut out = FourVec::zeros();
        for md in &self.modes {
            let ph = md.k.0.x * x[0] + md.k.0.y * x[1] + md.k.0.z * x[2];
            out += md.a * C64::from_polar(plane_wave_prefactor(), ph);
        }
        out
    }
}

fn check_modes(modes: &[Mode]) -> Result<()> {
    let mut seen = HashMap::with_capacity(modes.len());
    for (j, md) in modes.iter().enumerate() {
        if md.k.norm() == 0.0 {
            return Err(Error::DegenerateMomentum);
        }
        if !md.k.0.iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidParameter(format!("mode {j} has a non-finite momentum")));
        }
        if let Some(prev) = seen.insert(momentum_key(&md.k), j) {
            return Err(Error::Representation(format!("modes {prev} and {j} share the momentum {:?}", md.k.0)));
        }
    }
    Ok(())
}

impl DiscreteModeField {
    pub fn new(cfg: PhysicsConfig, modes: Vec<Mode>, normalization: Normalization) -> Result<Self> {
        check_modes(&modes)?;
        Ok(Self { cfg, modes, normalization })
    }

    pub fn empty(cfg: PhysicsConfig) -> Self {
        Self { cfg, modes: Vec::new(), normalization: Normalization::Unit }
    }

    /// The basis solution c_{εh}(k) = c, all other coefficients zero.
    pub fn basis(cfg: PhysicsConfig, k: Momentum3, e: Chirality, h: Helicity, c: C64) -> Result<Self> {
        let mut coeffs = [[ZERO; 3]; 2];
        coeffs[e.index()][h.index()] = c;
        Self::new(cfg, vec![Mode { k, c: coeffs }], Normalization::Unit)
    }

    pub fn with_normalization(mut self, n: Normalization) -> Self {
        self.normalization = n;
        self
    }

    pub fn n(&self, e: Chirality, h: Helicity) -> f64 {
        self.normalization.factor(&self.cfg, e, h)
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    pub fn omega(&self, j: usize) -> f64 {
        self.modes[j].k.omega(self.cfg.m)
    }

    pub fn polarizations(&self, j: usize) -> Result<[PolarizationSet; 2]> {
        let k = &self.modes[j].k;
        Ok([
            polarization_basis(k, Chirality::Plus, &self.cfg)?,
            polarization_basis(k, Chirality::Minus, &self.cfg)?,
        ])
    }

    /// Effective amplitudes N·c (the coefficients of u_{εh} e^{−iεωx⁰}).
    pub fn amplitudes(&self, j: usize) -> Coeffs {
        let mut out = self.modes[j].c;
        for e in Chirality::ALL {
            for h in Helicity::ALL {
                out[e.index()][h.index()] *= self.n(e, h);
            }
        }
        out
    }

    /// Four-vector amplitude of the chirality-ε part of mode j at time x⁰.
    pub fn sector_amplitude(&self, j: usize, e: Chirality, x0: f64) -> Result<FourVec> {
        let pol = polarization_basis(&self.modes[j].k, e, &self.cfg)?;
        let amps = self.amplitudes(j);
        let w = self.omega(j);
        let mut a = FourVec::zeros();
        for h in Helicity::ALL {
            a += pol.u[h.index()] * amps[e.index()][h.index()];
        }
        Ok(a * C64::from_polar(1.0, -e.sign() * w * x0))
    }

    /// Initial data of mode j at time x⁰.
    pub fn mode_data(&self, j: usize, x0: f64) -> Result<ModeData> {
        let w = self.omega(j);
        let mut a = FourVec::zeros();
        let mut adot = FourVec::zeros();
        for e in Chirality::ALL {
            let s = self.sector_amplitude(j, e, x0)?;
            a += s;
            adot += s * C64::new(0.0, -e.sign() * w);
        }
        Ok(ModeData { k: self.modes[j].k, a, adot })
    }

    pub fn to_initial_data(&self, x0: f64) -> Result<FieldInitialData> {
        let modes = (0..self.len()).map(|j| self.mode_data(j, x0)).collect::<Result<Vec<_>>>()?;
        Ok(FieldInitialData { cfg: self.cfg, x0, modes })
    }

    /// Expands covariant initial data in the basis solutions. The data are projected onto
    /// the constraint surface; check `FieldInitialData::constraint_residual` beforehand if
    /// the input is not known to satisfy the constraints.
    pub fn from_initial_data(data: &FieldInitialData, normalization: Normalization) -> Result<Self> {
        let cfg = data.cfg;
        let mut modes = Vec::with_capacity(data.modes.len());
        for md in &data.modes {
            let w = md.k.omega(cfg.m);
            let mut c = [[ZERO; 3]; 2];
            for e in Chirality::ALL {
                let pol = polarization_basis(&md.k, e, &cfg)?;
                let sector = (md.a + md.adot * C64::new(0.0, e.sign() / w)) * C64::new(0.5, 0.0);
                let phase = C64::from_polar(1.0, e.sign() * w * data.x0);
                for h in Helicity::ALL {
                    let n = normalization.factor(&cfg, e, h);
                    c[e.index()][h.index()] = minkowski_conj(&pol.u[h.index()], &sector) * phase / n;
                }
            }
            modes.push(Mode { k: md.k, c });
        }
        Self::new(cfg, modes, normalization)
    }

    pub fn plane_waves(&self) -> Result<Vec<PlaneWave>> {
        let pre = C64::new(plane_wave_prefactor(), 0.0);
        let mut out = Vec::with_capacity(2 * self.len());
        for j in 0..self.len() {
            for e in Chirality::ALL {
                out.push(PlaneWave {
                    k: self.modes[j].k,
                    eps: e,
                    omega: self.omega(j),
                    amp: self.sector_amplitude(j, e, 0.0)? * pre,
                });
            }
        }
        Ok(out)
    }

    /// A^μ(x⁰, x).
    pub fn evaluate(&self, x0: f64, x: &[f64; 3]) -> Result<FourVec> {
        let waves = self.plane_waves()?;
        Ok(jet(&waves, &[x0, x[0], x[1], x[2]], |w| w.amp).val)
    }

    /// A^μ and its derivatives at a spacetime point.
    pub fn evaluate_jet(&self, x: &[f64; 4]) -> Result<Jet> {
        let waves = self.plane_waves()?;
        Ok(jet(&waves, x, |w| w.amp))
    }

    /// c_{εh}(k) → e^{−iεω Δ} c_{εh}(k).
    pub fn evolve(&self, dt: f64) -> Self {
        let mut out = self.clone();
        for (j, md) in out.modes.iter_mut().enumerate() {
            let w = self.omega(j);
            for e in Chirality::ALL {
                let ph = C64::from_polar(1.0, -e.sign() * w * dt);
                for c in md.c[e.index()].iter_mut() {
                    *c *= ph;
                }
            }
        }
        out
    }

    /// Applies a per-coefficient map (j, ε, h, c) ↦ c′.
    pub fn map_coeffs<F: Fn(usize, Chirality, Helicity, C64) -> C64>(&self, f: F) -> Self {
        let mut out = self.clone();
        for (j, md) in out.modes.iter_mut().enumerate() {
            for e in Chirality::ALL {
                for h in Helicity::ALL {
                    let c = &mut md.c[e.index()][h.index()];
                    *c = f(j, e, h, *c);
                }
            }
        }
        out
    }

    pub fn scale(&self, s: C64) -> Self {
        self.map_coeffs(|_, _, _, c| c * s)
    }

    /// Field sum; modes are matched by exact momentum equality.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        if self.normalization != other.normalization {
            return Err(Error::Incompatible("fields use different normalization conventions".into()));
        }
        let mut out = self.clone();
        let index: HashMap<_, _> = self.modes.iter().enumerate().map(|(j, m)| (momentum_key(&m.k), j)).collect();
        for md in &other.modes {
            match index.get(&momentum_key(&md.k)) {
                Some(&j) => {
                    for e in 0..2 {
                        for h in 0..3 {
                            out.modes[j].c[e][h] += md.c[e][h];
                        }
                    }
                }
                None => out.modes.push(*md),
            }
        }
        Ok(out)
    }

    pub fn compatible(&self, other: &Self) -> Result<()> {
        if self.cfg != other.cfg {
            return Err(Error::Incompatible(format!("configs differ: {:?} vs {:?}", self.cfg, other.cfg)));
        }
        Ok(())
    }

    /// (A₊, A₋).
    pub fn chirality_split(&self) -> (Self, Self) {
        let keep = |s: Chirality| self.map_coeffs(move |_, e, _, c| if e == s { c } else { ZERO });
        (keep(Chirality::Plus), keep(Chirality::Minus))
    }

    /// (A₊₁, A₋₁, A₀).
    pub fn helicity_split(&self) -> (Self, Self, Self) {
        let keep = |s: Helicity| self.map_coeffs(move |_, _, h, c| if h == s { c } else { ZERO });
        (keep(Helicity::Plus), keep(Helicity::Minus), keep(Helicity::Zero))
    }

    /// Chirality operator: c_{εh} → ε c_{εh}.
    pub fn apply_c(&self) -> Self {
        self.map_coeffs(|_, e, _, c| c * e.sign())
    }

    /// Helicity operator: c_{εh} → h c_{εh}; [𝔥A](x⁰) = (0, 𝔥A(x⁰)).
    pub fn apply_helicity(&self) -> Self {
        self.map_coeffs(|_, _, h, c| c * h.value())
    }

    /// Energy operator h: c_{εh} → εω c_{εh}.
    pub fn apply_energy(&self) -> Self {
        self.map_coeffs(|j, e, _, c| c * (e.sign() * self.omega(j)))
    }

    /// Six-component vectors Ψ = (A − iγE, A + iγE) per mode at time x⁰.
    pub fn to_six_component(&self, x0: f64) -> Result<Vec<Vec6c>> {
        let g = C64::new(0.0, self.cfg.gamma);
        (0..self.len())
            .map(|j| {
                let md = self.mode_data(j, x0)?;
                let a = spatial(&md.a);
                let e = md.electric();
                Ok(stack(&(a - e * g), &(a + e * g)))
            })
            .collect()
    }

    /// Inverse of `to_six_component` for the given momenta.
    pub fn from_six_component(
        cfg: PhysicsConfig,
        ks: &[Momentum3],
        psi: &[Vec6c],
        x0: f64,
        normalization: Normalization,
    ) -> Result<Self> {
        if ks.len() != psi.len() {
            return Err(Error::InvalidParameter("momentum and six-component lists differ in length".into()));
        }
        let i = C64::new(0.0, 1.0);
        let mut modes = Vec::with_capacity(ks.len());
        for (k, p) in ks.iter().zip(psi) {
            let u = Vec3c::new(p[0], p[1], p[2]);
            let l = Vec3c::new(p[3], p[4], p[5]);
            let a = (u + l) * C64::new(0.5, 0.0);
            let e = (l - u) / (C64::new(0.0, 2.0 * cfg.gamma));
            let adot = -e_to_adot(k, &cfg, &e);
            let kc = k.complex();
            let k2 = k.norm_squared();
            // E + Ȧ = −ikA⁰ and Ȧ⁰ = −ik·A.
            let a0 = i * kc.dot(&(e + adot)) / k2;
            let a0dot = -i * kc.dot(&a);
            modes.push(ModeData {
                k: *k,
                a: FourVec::new(a0, a[0], a[1], a[2]),
                adot: FourVec::new(a0dot, adot[0], adot[1], adot[2]),
            });
        }
        Self::from_initial_data(&FieldInitialData { cfg, x0, modes }, normalization)
    }

    /// Largest relative constraint residual at time x⁰.
    pub fn constraint_residual(&self, x0: f64) -> Result<f64> {
        Ok(self.to_initial_data(x0)?.constraint_residual())
    }

    /// Σ over modes of |c|², a plain coefficient norm used for tolerance scaling.
    pub fn coeff_norm(&self) -> f64 {
        self.modes.iter().flat_map(|m| m.c.iter().flatten()).map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn ks(&self) -> Vec<Momentum3> {
        self.modes.iter().map(|m| m.k).collect()
    }
}

/// −Ȧ recovered from E = −ω⁻²[M² + (k·S)²]Ȧ, using [M² + (k·S)²]⁻¹ = ω⁻²𝔥² + M⁻²k̂k̂ᵀ.
fn e_to_adot(k: &Momentum3, cfg: &PhysicsConfig, e: &Vec3c) -> Vec3c {
    let kc = k.complex();
    let w2 = k.norm_squared() + cfg.m * cfg.m;
    let long = kc * kc.dot(e) / C64::new(k.norm_squared(), 0.0);
    (e - long) + long * C64::new(w2 / (cfg.m * cfg.m), 0.0)
}
