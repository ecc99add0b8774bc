//! Momentum-lattice representation of fields and the spectral position operator x = i∇_k.
//!
//! Sites sit at k_n = (n − N/2 + ½)Δk on each axis, so no site is at k = 0. The dual
//! position lattice is x_m = (m − N/2)Δx with Δx = 2π/(NΔk).

use std::f64::consts::PI;
use std::sync::Arc;

use nalgebra::Vector3;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::fields::{DiscreteModeField, FieldInitialData, Mode, ModeData, Normalization};
use crate::mode_algebra::{polarization_basis, spatial, Chirality, FourVec, Helicity, Momentum3, PhysicsConfig, Vec3c};
use crate::C64;

/// A complex function sampled on all N³ sites, index (i, j, l) ↦ (i·N + j)·N + l.
pub type LatticeFn = Vec<C64>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lattice {
    pub n: usize,
    pub dk: f64,
}

impl Lattice {
    pub fn new(n: usize, dk: f64) -> Result<Self> {
        if n < 2 || !n.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!("lattice size must be even and ≥ 2, got {n}")));
        }
        if !(dk > 0.0) || !dk.is_finite() {
            return Err(Error::InvalidParameter(format!("lattice spacing must be positive, got {dk}")));
        }
        Ok(Self { n, dk })
    }

    /// Lattice of N sites per axis covering [−kmax, kmax].
    pub fn covering(n: usize, kmax: f64) -> Result<Self> {
        Self::new(n, 2.0 * kmax / n as f64)
    }

    pub fn len(&self) -> usize {
        self.n * self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn k1(&self, i: usize) -> f64 {
        (i as f64 - self.n as f64 / 2.0 + 0.5) * self.dk
    }

    pub fn dx(&self) -> f64 {
        2.0 * PI / (self.n as f64 * self.dk)
    }

    pub fn x1(&self, m: usize) -> f64 {
        (m as f64 - self.n as f64 / 2.0) * self.dx()
    }

    pub fn box_length(&self) -> f64 {
        2.0 * PI / self.dk
    }

    pub fn index(&self, i: usize, j: usize, l: usize) -> usize {
        (i * self.n + j) * self.n + l
    }

    pub fn coords(&self, idx: usize) -> [usize; 3] {
        let n = self.n;
        [idx / (n * n), (idx / n) % n, idx % n]
    }

    pub fn momentum(&self, idx: usize) -> Momentum3 {
        let [i, j, l] = self.coords(idx);
        Momentum3::new(self.k1(i), self.k1(j), self.k1(l))
    }

    pub fn position(&self, idx: usize) -> [f64; 3] {
        let [i, j, l] = self.coords(idx);
        [self.x1(i), self.x1(j), self.x1(l)]
    }

    pub fn momenta(&self) -> Vec<Momentum3> {
        (0..self.len()).map(|i| self.momentum(i)).collect()
    }
}

/// Unitary lattice Fourier transform F[m] = N^{−3/2} Σ_n g[n] e^{ik_n·x_m} and its inverse.
pub struct Spectral {
    lattice: Lattice,
    fwd: Arc<dyn Fft<f64>>,
    bwd: Arc<dyn Fft<f64>>,
    pre: Vec<C64>,
    post: Vec<C64>,
}

impl Spectral {
    pub fn new(lattice: Lattice) -> Self {
        let n = lattice.n;
        let mut planner = FftPlanner::new();
        // Positive-exponent transform is rustfft's "inverse".
        let fwd = planner.plan_fft_inverse(n);
        let bwd = planner.plan_fft_forward(n);
        let t = -(n as f64) / 2.0;
        let s = t + 0.5;
        let nf = n as f64;
        let pre = (0..n).map(|i| C64::from_polar(1.0, 2.0 * PI * i as f64 * t / nf)).collect();
        let post = (0..n)
            .map(|m| C64::from_polar(1.0 / nf.sqrt(), 2.0 * PI * (s * m as f64 + s * t) / nf))
            .collect();
        Self { lattice, fwd, bwd, pre, post }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    fn axis_pass(&self, data: &mut [C64], axis: usize, forward: bool) {
        let n = self.lattice.n;
        let stride = match axis {
            0 => n * n,
            1 => n,
            _ => 1,
        };
        let mut line = vec![C64::new(0.0, 0.0); n];
        for base in 0..data.len() {
            let c = self.lattice.coords(base);
            if c[axis] != 0 {
                continue;
            }
            for q in 0..n {
                line[q] = data[base + q * stride];
            }
            if forward {
                for q in 0..n {
                    line[q] *= self.pre[q];
                }
                self.fwd.process(&mut line);
                for q in 0..n {
                    line[q] *= self.post[q];
                }
            } else {
                for q in 0..n {
                    line[q] *= self.post[q].conj();
                }
                self.bwd.process(&mut line);
                for q in 0..n {
                    line[q] *= self.pre[q].conj();
                }
            }
            for q in 0..n {
                data[base + q * stride] = line[q];
            }
        }
    }

    /// Momentum samples → position samples.
    pub fn to_position(&self, g: &[C64]) -> LatticeFn {
        let mut d = g.to_vec();
        for axis in 0..3 {
            self.axis_pass(&mut d, axis, true);
        }
        d
    }

    /// Position samples → momentum samples.
    pub fn to_momentum(&self, f: &[C64]) -> LatticeFn {
        let mut d = f.to_vec();
        for axis in 0..3 {
            self.axis_pass(&mut d, axis, false);
        }
        d
    }

    /// x_axis g = i ∂g/∂k_axis, realized as multiplication by x in the dual lattice.
    pub fn apply_x(&self, g: &[C64], axis: usize) -> LatticeFn {
        let mut f = self.to_position(g);
        for (idx, v) in f.iter_mut().enumerate() {
            *v *= self.lattice.position(idx)[axis];
        }
        self.to_momentum(&f)
    }

    /// x applied componentwise to a lattice 3-vector function.
    pub fn apply_x_vec(&self, g: &[Vec3c], axis: usize) -> Vec<Vec3c> {
        let mut out = vec![Vec3c::zeros(); g.len()];
        for c in 0..3 {
            let comp: LatticeFn = g.iter().map(|v| v[c]).collect();
            let xc = self.apply_x(&comp, axis);
            for (o, v) in out.iter_mut().zip(xc) {
                o[c] = v;
            }
        }
        out
    }
}

/// A field whose momenta are exactly the sites of a lattice, stored in site order.
#[derive(Debug, Clone, PartialEq)]
pub struct GridField {
    pub lattice: Lattice,
    pub field: DiscreteModeField,
}

/// Cartesian initial data sampled on a lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeData {
    pub a0: LatticeFn,
    pub a: Vec<Vec3c>,
    pub a0dot: LatticeFn,
    pub adot: Vec<Vec3c>,
}

impl LatticeData {
    pub fn zeros(len: usize) -> Self {
        let z = C64::new(0.0, 0.0);
        Self { a0: vec![z; len], a: vec![Vec3c::zeros(); len], a0dot: vec![z; len], adot: vec![Vec3c::zeros(); len] }
    }
}

impl GridField {
    /// Field with given Cartesian sector amplitudes Â_ε(k) at x⁰ = 0 (N = 1).
    pub fn from_cartesian<F>(lattice: Lattice, cfg: PhysicsConfig, amp: F) -> Result<Self>
    where
        F: Fn(&Vector3<f64>) -> [Vec3c; 2],
    {
        let mut modes = Vec::with_capacity(lattice.len());
        for idx in 0..lattice.len() {
            let k = lattice.momentum(idx);
            let sectors = amp(&k.0);
            let mut c = [[C64::new(0.0, 0.0); 3]; 2];
            for e in Chirality::ALL {
                let pol = polarization_basis(&k, e, &cfg)?;
                for h in Helicity::ALL {
                    let u = spatial(&pol.u[h.index()]);
                    c[e.index()][h.index()] = u.dotc(&sectors[e.index()]) / u.norm_squared();
                }
            }
            modes.push(Mode { k, c });
        }
        Ok(Self { lattice, field: DiscreteModeField::new(cfg, modes, Normalization::Unit)? })
    }

    /// Packet with Â_ε(k) = pol[ε] g(k), g the Gaussian envelope about k̄ and x̄.
    pub fn gaussian_packet(
        lattice: Lattice,
        cfg: PhysicsConfig,
        kbar: Vector3<f64>,
        sigma: f64,
        xbar: Vector3<f64>,
        pol: [Vec3c; 2],
    ) -> Result<Self> {
        if !(sigma > 0.0) {
            return Err(Error::InvalidParameter(format!("packet width must be positive, got {sigma}")));
        }
        Self::from_cartesian(lattice, cfg, |k| {
            let g = gaussian(k, &kbar, sigma, &xbar);
            [pol[0] * g, pol[1] * g]
        })
    }

    pub fn from_field(lattice: Lattice, field: DiscreteModeField) -> Result<Self> {
        if field.len() != lattice.len() || field.modes.iter().enumerate().any(|(i, m)| m.k != lattice.momentum(i)) {
            return Err(Error::Representation("field momenta do not match the lattice sites".into()));
        }
        Ok(Self { lattice, field })
    }

    pub fn cfg(&self) -> PhysicsConfig {
        self.field.cfg
    }

    pub fn with_field(&self, field: DiscreteModeField) -> Self {
        Self { lattice: self.lattice, field }
    }

    pub fn evolve(&self, dt: f64) -> Self {
        self.with_field(self.field.evolve(dt))
    }

    pub fn map_field<F: FnOnce(&DiscreteModeField) -> DiscreteModeField>(&self, f: F) -> Self {
        self.with_field(f(&self.field))
    }

    /// self − other on the same lattice.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.lattice != other.lattice {
            return Err(Error::Incompatible("fields live on different lattices".into()));
        }
        Ok(self.with_field(self.field.add(&other.field.scale(C64::new(-1.0, 0.0)))?))
    }

    /// Cartesian initial data at time x⁰.
    pub fn lattice_data(&self, x0: f64) -> Result<LatticeData> {
        let mut d = LatticeData::zeros(self.lattice.len());
        for j in 0..self.field.len() {
            let md = self.field.mode_data(j, x0)?;
            d.a0[j] = md.a[0];
            d.a[j] = spatial(&md.a);
            d.a0dot[j] = md.adot[0];
            d.adot[j] = spatial(&md.adot);
        }
        Ok(d)
    }

    /// Field with the given Cartesian initial data, projected onto the constraint surface.
    pub fn from_lattice_data(&self, data: &LatticeData, x0: f64) -> Result<Self> {
        let fid = self.initial_data_from(data, x0);
        let field = DiscreteModeField::from_initial_data(&fid, self.field.normalization)?;
        Ok(self.with_field(field))
    }

    pub fn initial_data_from(&self, data: &LatticeData, x0: f64) -> FieldInitialData {
        let modes = (0..self.lattice.len())
            .map(|j| ModeData {
                k: self.lattice.momentum(j),
                a: FourVec::new(data.a0[j], data.a[j][0], data.a[j][1], data.a[j][2]),
                adot: FourVec::new(data.a0dot[j], data.adot[j][0], data.adot[j][1], data.adot[j][2]),
            })
            .collect();
        FieldInitialData { cfg: self.cfg(), x0, modes }
    }
}

/// Gaussian envelope e^{−|k−k̄|²/(4σ²)} e^{−ik·x̄}, whose position density has width σ_x = 1/(2σ).
pub fn gaussian(k: &Vector3<f64>, kbar: &Vector3<f64>, sigma: f64, xbar: &Vector3<f64>) -> C64 {
    let d = k - kbar;
    C64::from_polar((-d.norm_squared() / (4.0 * sigma * sigma)).exp(), -k.dot(xbar))
}
