//! Momentum, helicity, spin, position, velocity and angular-momentum operators acting on
//! Proca fields. Position and orbital operators need k-derivatives and act on lattice fields.

use crate::error::{Error, Result};
use crate::fields::{DiscreteModeField, FieldInitialData, ModeData};
use crate::grid::{GridField, LatticeData, Spectral};
use crate::inner::{inner, norm_squared, InnerProductKind};
use crate::mode_algebra::{cross_s, dot_s, spatial, spin_matrices, Mat3, MetricParams, Momentum3, FourVec, Vec3c};
use crate::transforms::{from_wavefunction, to_wavefunction, WaveFunctionSet};
use crate::C64;

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PositionMethod {
    /// f → x f → back through the Foldy map.
    Wavefunction,
    /// 𝔜, 𝔛 acting on covariant initial data.
    Covariant,
}

/// Access to a lattice representation; finite mode sets are not closed under x₀.
pub trait AsGrid {
    fn as_grid(&self) -> Result<&GridField>;
}

impl AsGrid for GridField {
    fn as_grid(&self) -> Result<&GridField> {
        Ok(self)
    }
}

impl AsGrid for DiscreteModeField {
    fn as_grid(&self) -> Result<&GridField> {
        Err(Error::Representation("position-type operators need a lattice field".into()))
    }
}

/// [p₀A](x⁰) = k A(x⁰), one field per Cartesian component.
pub fn apply_momentum(field: &DiscreteModeField) -> [DiscreteModeField; 3] {
    std::array::from_fn(|i| field.map_coeffs(|j, _, _, c| c * field.modes[j].k.0[i]))
}

/// [𝔥A](x⁰) = (0, 𝔥A(x⁰)).
pub fn apply_helicity(field: &DiscreteModeField) -> DiscreteModeField {
    field.apply_helicity()
}

/// ((p₀·s₀)A) = (0, (k·S)A): coefficients scaled by |k| h.
pub fn apply_momentum_dot_spin(field: &DiscreteModeField) -> DiscreteModeField {
    field.map_coeffs(|j, _, h, c| c * (h.value() * field.modes[j].k.norm()))
}

/// Largest deviation between the wave function of (p₀·s₀)A and the curl ε_{ijk}∂_j f^k
/// of the wave function of A, relative to the latter's norm.
pub fn helicity_two_path_residual(field: &DiscreteModeField, params: &MetricParams, x0: f64) -> Result<f64> {
    let direct = to_wavefunction(&apply_momentum_dot_spin(field), params, x0)?;
    let curl = to_wavefunction(field, params, x0)?.apply_momentum_dot_spin();
    let scale = curl.norm_squared().sqrt().max(f64::MIN_POSITIVE);
    let diff: f64 = direct
        .f
        .iter()
        .zip(&curl.f)
        .map(|(a, b)| (a[0] - b[0]).norm_squared() + (a[1] - b[1]).norm_squared())
        .sum();
    Ok(diff.sqrt() / scale)
}

/// s̃₀ = (D+M²)/(2M√D) S − (√D−M) k(k·S)/(2M√D(√D+M)) + i{(k·S)(k×S)+(k×S)(k·S)}/(2M√D).
pub fn s_tilde(k: &Momentum3, m: f64) -> [Mat3; 3] {
    let w = k.omega(m);
    let s = spin_matrices();
    let ks = dot_s(&k.0);
    let kx = cross_s(&k.0);
    std::array::from_fn(|i| {
        s[i] * re((w * w + m * m) / (2.0 * m * w)) - ks * re(k.0[i] * (w - m) / (2.0 * m * w * (w + m)))
            + (ks * kx[i] + kx[i] * ks) * C64::new(0.0, 1.0 / (2.0 * m * w))
    })
}

fn spin_mode(md: &ModeData, m: f64) -> [ModeData; 3] {
    let w = md.k.omega(m);
    let kc = md.k.complex();
    let a = spatial(&md.a);
    let adot = spatial(&md.adot);
    let s0 = kc.cross(&adot) / re(m * w);
    let s0dot = kc.cross(&a) * re(-w / m);
    let st = s_tilde(&md.k, m);
    std::array::from_fn(|i| {
        let v = st[i] * a;
        let vd = st[i] * adot;
        ModeData { k: md.k, a: FourVec::new(s0[i], v[0], v[1], v[2]), adot: FourVec::new(s0dot[i], vd[0], vd[1], vd[2]) }
    })
}

/// Initial data of 𝒮 = s₀A at time x⁰, one per spin component.
pub fn spin_initial_data(field: &DiscreteModeField, x0: f64) -> Result<[FieldInitialData; 3]> {
    let m = field.cfg.m;
    let mut out: [FieldInitialData; 3] = std::array::from_fn(|_| FieldInitialData { cfg: field.cfg, x0, modes: Vec::with_capacity(field.len()) });
    for j in 0..field.len() {
        let md = field.mode_data(j, x0)?;
        for (o, d) in out.iter_mut().zip(spin_mode(&md, m)) {
            o.modes.push(d);
        }
    }
    Ok(out)
}

/// s₀A from the covariant formulas.
pub fn apply_spin(field: &DiscreteModeField) -> Result<[DiscreteModeField; 3]> {
    let data = spin_initial_data(field, 0.0)?;
    collect3(data.iter().map(|d| DiscreteModeField::from_initial_data(d, field.normalization)))
}

/// s_𝔞A = 𝒰_𝔞⁻¹ S′ 𝒰_𝔞 A through the wave function.
pub fn spin_via_wavefunction(field: &DiscreteModeField, params: &MetricParams) -> Result<[DiscreteModeField; 3]> {
    let wf = to_wavefunction(field, params, 0.0)?;
    let s = spin_matrices();
    collect3((0..3).map(|i| {
        let mut g = wf.clone();
        for f in g.f.iter_mut() {
            f[0] = s[i] * f[0];
            f[1] = s[i] * f[1];
        }
        from_wavefunction(&g, params, field.normalization)
    }))
}

fn collect3<T, It: Iterator<Item = Result<T>>>(it: It) -> Result<[T; 3]> {
    let v = it.collect::<Result<Vec<T>>>()?;
    v.try_into().map_err(|_| Error::Representation("expected three components".into()))
}

/// i k (1/(2D) + 1/(M(√D+M))), the non-derivative part of 𝔜.
fn y_extra(k: &Momentum3, m: f64) -> [C64; 3] {
    let w = k.omega(m);
    let s = 1.0 / (2.0 * w * w) + 1.0 / (m * (w + m));
    std::array::from_fn(|i| C64::new(0.0, k.0[i] * s))
}

/// Non-derivative part of 𝔛.
fn x_extra(k: &Momentum3, m: f64) -> [Mat3; 3] {
    let w = k.omega(m);
    let ks = dot_s(&k.0);
    let ks2 = ks * ks;
    let kx = cross_s(&k.0);
    let s = spin_matrices();
    std::array::from_fn(|i| {
        Mat3::identity() * C64::new(0.0, -k.0[i] / (2.0 * w * w))
            - ks2 * C64::new(0.0, k.0[i] / (m * w * w * (w + m)))
            + (s[i] * ks + ks * s[i]) * C64::new(0.0, 1.0 / (2.0 * m * w))
            - kx[i] * re((w - m) / (2.0 * m * w * (w + m)))
    })
}

fn x_data(sp: &Spectral, d: &LatticeData, axis: usize) -> LatticeData {
    LatticeData {
        a0: sp.apply_x(&d.a0, axis),
        a: sp.apply_x_vec(&d.a, axis),
        a0dot: sp.apply_x(&d.a0dot, axis),
        adot: sp.apply_x_vec(&d.adot, axis),
    }
}

/// Initial data of χ = x₀A at the reference time x⁰₀ from the covariant formulas.
pub fn position_initial_data(grid: &GridField, x0_0: f64) -> Result<[FieldInitialData; 3]> {
    let sp = Spectral::new(grid.lattice);
    let d = grid.lattice_data(x0_0)?;
    let m = grid.cfg().m;
    let mut out = Vec::with_capacity(3);
    for axis in 0..3 {
        let mut chi = x_data(&sp, &d, axis);
        for j in 0..grid.lattice.len() {
            let k = grid.lattice.momentum(j);
            let w = k.omega(m);
            let ye = y_extra(&k, m)[axis];
            let xe = x_extra(&k, m)[axis];
            let dk = C64::new(0.0, -k.0[axis] / (w * w));
            chi.a0[j] += ye * d.a0[j] + d.adot[j][axis] / (m * w);
            chi.a0dot[j] += (ye + dk) * d.a0dot[j] - d.a[j][axis] * (w / m);
            chi.a[j] += xe * d.a[j];
            chi.adot[j] += (xe + Mat3::identity() * dk) * d.adot[j];
        }
        out.push(grid.initial_data_from(&chi, x0_0));
    }
    Ok(out.try_into().unwrap())
}

/// χ = x₀A with x₀ defined relative to the reference time x⁰₀.
pub fn apply_position<F: AsGrid + ?Sized>(field: &F, method: PositionMethod, x0_0: f64) -> Result<[GridField; 3]> {
    let grid = field.as_grid()?;
    let norm = grid.field.normalization;
    match method {
        PositionMethod::Covariant => {
            let data = position_initial_data(grid, x0_0)?;
            collect3(data.iter().map(|d| Ok(grid.with_field(DiscreteModeField::from_initial_data(d, norm)?))))
        }
        PositionMethod::Wavefunction => {
            let unit = MetricParams::unit();
            let wf = to_wavefunction(&grid.field, &unit, x0_0)?;
            let sp = Spectral::new(grid.lattice);
            collect3((0..3).map(|axis| {
                let g = x_wavefunction(&sp, &wf, axis);
                Ok(grid.with_field(from_wavefunction(&g, &unit, norm)?))
            }))
        }
    }
}

fn x_wavefunction(sp: &Spectral, wf: &WaveFunctionSet, axis: usize) -> WaveFunctionSet {
    let mut out = wf.clone();
    for e in 0..2 {
        let comp: Vec<Vec3c> = wf.f.iter().map(|f| f[e]).collect();
        for (o, v) in out.f.iter_mut().zip(sp.apply_x_vec(&comp, axis)) {
            o[e] = v;
        }
    }
    out
}

/// Re⟨A, O_i A⟩/⟨A, A⟩ in the canonical product.
pub fn expectation(a: &GridField, images: &[GridField; 3]) -> Result<[f64; 3]> {
    let n = norm_squared(&InnerProductKind::Canonical, &a.field, 0.0)?;
    if n == 0.0 {
        return Err(Error::Domain("expectation value of the zero field".into()));
    }
    let mut out = [0.0; 3];
    for (o, img) in out.iter_mut().zip(images) {
        *o = inner(&InnerProductKind::Canonical, &a.field, &img.field, 0.0)?.re / n;
    }
    Ok(out)
}

/// Canonical norm of a field.
pub fn canonical_norm(a: &GridField) -> Result<f64> {
    Ok(norm_squared(&InnerProductKind::Canonical, &a.field, 0.0)?.sqrt())
}

/// ‖a − b‖ in the canonical norm.
pub fn distance(a: &GridField, b: &GridField) -> Result<f64> {
    canonical_norm(&a.sub(b)?)
}

/// Largest ‖[x₀ⁱ, x₀ʲ]A‖/‖A‖ over pairs i < j.
pub fn position_commutator_residual(grid: &GridField, method: PositionMethod) -> Result<f64> {
    let x = apply_position(grid, method, 0.0)?;
    let xx: Vec<[GridField; 3]> = x.iter().map(|c| apply_position(c, method, 0.0)).collect::<Result<_>>()?;
    let n = canonical_norm(grid)?;
    let mut worst: f64 = 0.0;
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        worst = worst.max(distance(&xx[j][i], &xx[i][j])? / n);
    }
    Ok(worst)
}

/// Largest ‖[x₀ⁱ, C]A‖/‖A‖.
pub fn position_chirality_residual(grid: &GridField, method: PositionMethod) -> Result<f64> {
    let xc = apply_position(&grid.map_field(|f| f.apply_c()), method, 0.0)?;
    let x = apply_position(grid, method, 0.0)?;
    let n = canonical_norm(grid)?;
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        worst = worst.max(distance(&xc[i], &x[i].map_field(|f| f.apply_c()))? / n);
    }
    Ok(worst)
}

/// Largest ‖[x₀ⁱ, s₀ʲ]A‖/‖A‖ over all i, j.
pub fn position_spin_residual(grid: &GridField, method: PositionMethod) -> Result<f64> {
    let x = apply_position(grid, method, 0.0)?;
    let s = apply_spin(&grid.field)?;
    let n = canonical_norm(grid)?;
    let mut worst: f64 = 0.0;
    for (j, sj) in s.iter().enumerate() {
        let xs = apply_position(&grid.with_field(sj.clone()), method, 0.0)?;
        for i in 0..3 {
            let sx = grid.with_field(apply_spin(&x[i].field)?[j].clone());
            worst = worst.max(distance(&xs[i], &sx)? / n);
        }
    }
    Ok(worst)
}

/// e^{ihΔ} x₀ e^{−ihΔ} A.
fn conjugated_position(grid: &GridField, method: PositionMethod, dt: f64) -> Result<[GridField; 3]> {
    let moved = apply_position(&grid.evolve(dt), method, 0.0)?;
    Ok(moved.map(|g| g.evolve(-dt)))
}

/// i[h, x₀]A from central differences of the evolve-conjugated position, extrapolated
/// over the step sizes Δ, Δ/2, Δ/4.
pub fn heisenberg_velocity(grid: &GridField, method: PositionMethod, dt: f64) -> Result<[GridField; 3]> {
    let steps = [dt, dt / 2.0, dt / 4.0];
    let mut est: Vec<[GridField; 3]> = Vec::new();
    for &h in &steps {
        let p = conjugated_position(grid, method, h)?;
        let m = conjugated_position(grid, method, -h)?;
        est.push(collect3((0..3).map(|i| Ok(p[i].sub(&m[i])?.map_field(|f| f.scale(re(0.5 / h))))))?);
    }
    // Richardson in h² over three levels.
    let rich = |a: &GridField, b: &GridField| -> Result<GridField> {
        b.map_field(|f| f.scale(re(4.0 / 3.0))).sub(&a.map_field(|f| f.scale(re(1.0 / 3.0))))
    };
    collect3((0..3).map(|i| {
        let r1 = rich(&est[0][i], &est[1][i])?;
        let r2 = rich(&est[1][i], &est[2][i])?;
        r2.map_field(|f| f.scale(re(16.0 / 15.0))).sub(&r1.map_field(|f| f.scale(re(1.0 / 15.0))))
    }))
}

/// (k/ω) C A.
pub fn velocity_operator(grid: &GridField) -> [GridField; 3] {
    let f = &grid.field;
    std::array::from_fn(|i| {
        grid.with_field(f.map_coeffs(|j, e, _, c| c * (e.sign() * f.modes[j].k.0[i] / f.omega(j))))
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct VelocityReport {
    /// max_i ‖i[h, x₀ⁱ]A − (kⁱ/ω)CA‖/‖A‖.
    pub residual: f64,
    /// ⟨i[h, x₀]⟩ from the commutator.
    pub mean_velocity: [f64; 3],
    /// ⟨(k/ω)C⟩.
    pub mean_operator: [f64; 3],
}

pub fn velocity_check(grid: &GridField) -> Result<VelocityReport> {
    let num = heisenberg_velocity(grid, PositionMethod::Covariant, 0.2)?;
    let exact = velocity_operator(grid);
    let n = canonical_norm(grid)?;
    let mut residual: f64 = 0.0;
    for i in 0..3 {
        residual = residual.max(distance(&num[i], &exact[i])? / n);
    }
    Ok(VelocityReport { residual, mean_velocity: expectation(grid, &num)?, mean_operator: expectation(grid, &exact)? })
}

/// (x × k)_i g = ε_{ijl} k_l (x_j g) on each component of the lattice data.
fn orbital_data(grid: &GridField, d: &LatticeData) -> [LatticeData; 3] {
    let sp = Spectral::new(grid.lattice);
    let xs: Vec<LatticeData> = (0..3).map(|a| x_data(&sp, d, a)).collect();
    let len = grid.lattice.len();
    std::array::from_fn(|i| {
        let (j, l) = ((i + 1) % 3, (i + 2) % 3);
        let mut out = LatticeData::zeros(len);
        for s in 0..len {
            let k = grid.lattice.momentum(s).0;
            let (kl, kj) = (re(k[l]), re(k[j]));
            out.a0[s] = xs[j].a0[s] * kl - xs[l].a0[s] * kj;
            out.a0dot[s] = xs[j].a0dot[s] * kl - xs[l].a0dot[s] * kj;
            out.a[s] = xs[j].a[s] * kl - xs[l].a[s] * kj;
            out.adot[s] = xs[j].adot[s] * kl - xs[l].adot[s] * kj;
        }
        out
    })
}

/// Total angular momentum 𝐌 = L + s₀: (x×p)A⁰ and (x×p + S)A.
pub fn apply_total_angular_momentum<F: AsGrid + ?Sized>(field: &F) -> Result<[GridField; 3]> {
    let grid = field.as_grid()?;
    let d = grid.lattice_data(0.0)?;
    let s = spin_matrices();
    let mut orb = orbital_data(grid, &d);
    for (i, o) in orb.iter_mut().enumerate() {
        for j in 0..grid.lattice.len() {
            o.a[j] += s[i] * d.a[j];
            o.adot[j] += s[i] * d.adot[j];
        }
    }
    collect3(orb.iter().map(|o| grid.from_lattice_data(o, 0.0)))
}

/// Orbital angular momentum L = x₀ × p₀ from 𝔏 = 𝐌 − 𝒮.
pub fn apply_angular_momentum<F: AsGrid + ?Sized>(field: &F) -> Result<[GridField; 3]> {
    let grid = field.as_grid()?;
    let m = apply_total_angular_momentum(grid)?;
    let s = apply_spin(&grid.field)?;
    collect3((0..3).map(|i| m[i].sub(&grid.with_field(s[i].clone()))))
}

/// L = x₀ × p₀ composed from the position and momentum operators.
pub fn orbital_via_position(grid: &GridField, method: PositionMethod) -> Result<[GridField; 3]> {
    let p = apply_momentum(&grid.field);
    let xp: Vec<[GridField; 3]> =
        p.iter().map(|pl| apply_position(&grid.with_field(pl.clone()), method, 0.0)).collect::<Result<_>>()?;
    collect3((0..3).map(|i| {
        let (j, l) = ((i + 1) % 3, (i + 2) % 3);
        xp[l][j].sub(&xp[j][l])
    }))
}

/// Unit Cartesian vector e_i as a complex 3-vector.
pub fn unit(i: usize) -> Vec3c {
    let mut v = Vec3c::zeros();
    v[i] = re(1.0);
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mode_algebra::PhysicsConfig;

    #[test]
    fn s_tilde_first_form_matches_second() {
        let cfg = PhysicsConfig::new(1.3, 1.0, 1.0).unwrap();
        let k = Momentum3::new(0.4, -0.7, 0.2);
        let (m, w, kn) = (cfg.m, k.omega(cfg.m), k.norm());
        let h = dot_s(&k.direction().unwrap());
        let kx = cross_s(&k.0);
        let s = spin_matrices();
        let st = s_tilde(&k, m);
        for i in 0..3 {
            let first = s[i]
                + h * kx[i] * C64::new(0.0, (1.0 - m / w) / kn)
                + kx[i] * h * C64::new(0.0, (w / m - 1.0) / kn);
            assert!(crate::mode_algebra::max_abs(&(first - st[i])) < 1e-14);
        }
    }

    #[test]
    fn x_extra_first_form_matches_second() {
        let m = 0.8;
        let k = Momentum3::new(-0.3, 0.9, 0.5);
        let (w, kn) = (k.omega(m), k.norm());
        let h = dot_s(&k.direction().unwrap());
        let s = spin_matrices();
        let xe = x_extra(&k, m);
        for i in 0..3 {
            let first = Mat3::identity() * C64::new(0.0, -k.0[i] / (2.0 * w * w))
                + h * h * C64::new(0.0, k.0[i] * (1.0 / (w * w) - 1.0 / (m * w)))
                + h * s[i] * C64::new(0.0, (1.0 - m / w) / kn)
                + s[i] * h * C64::new(0.0, (w / m - 1.0) / kn);
            assert!(crate::mode_algebra::max_abs(&(first - xe[i])) < 1e-14);
        }
    }
}
