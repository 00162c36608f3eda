//! Adaptive Gauss–Kronrod (10/21) quadrature in one dimension and an iterated
//! tensor-product version on rectangles.
//!
//! Interval selection is greedy on the error estimate with ties broken by
//! position, and the final sum is accumulated left to right, so results are
//! bit-for-bit reproducible for identical inputs.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Tolerances and subdivision budget for [`integrate_1d`] and [`integrate_2d`].
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_subdivisions: 2000,
        }
    }
}

impl QuadratureSpec {
    pub fn new(abs_tol: f64, rel_tol: f64, max_subdivisions: usize) -> Result<Self> {
        let spec = Self {
            abs_tol,
            rel_tol,
            max_subdivisions,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "quadrature tolerances must be positive (abs {}, rel {})",
                self.abs_tol, self.rel_tol
            )));
        }
        if self.max_subdivisions < 1 {
            return Err(Error::InvalidParameter("max_subdivisions must be at least 1".into()));
        }
        Ok(())
    }

    /// Same budget, tolerances no tighter than `floor`.
    pub fn relaxed_to(&self, floor: f64) -> Self {
        Self {
            abs_tol: self.abs_tol.max(floor),
            rel_tol: self.rel_tol.max(floor),
            ..*self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral<T> {
    pub value: T,
    pub error: T,
    pub evaluations: usize,
}

// Kronrod abscissae on [0, 1], outermost first; odd indices are the Gauss nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_490_617_357,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[derive(Debug, Clone, Copy)]
struct Panel<T> {
    a: T,
    b: T,
    value: T,
    error: T,
    splittable: bool,
}

fn check_finite<T: Real>(x: T, fx: T) -> Result<T> {
    if fx.is_finite() {
        Ok(fx)
    } else {
        Err(Error::InvalidParameter(format!("integrand not finite at {x}")))
    }
}

/// One 21-point Kronrod panel with the QUADPACK error heuristic.
fn kronrod21<T: Real, F>(f: &mut F, a: T, b: T) -> Result<(T, T)>
where
    F: FnMut(T) -> Result<T>,
{
    let half = T::lit(0.5);
    let center = (a + b) * half;
    let half_len = (b - a) * half;
    let mut fv1 = [T::zero(); 10];
    let mut fv2 = [T::zero(); 10];

    let fc = check_finite(center, f(center)?)?;
    let mut res_g = T::zero();
    let mut res_k = T::lit(WGK[10]) * fc;
    let mut res_abs = res_k.abs();
    for j in 0..10 {
        let dx = half_len * T::lit(XGK[j]);
        let x1 = center - dx;
        let x2 = center + dx;
        let f1 = check_finite(x1, f(x1)?)?;
        let f2 = check_finite(x2, f(x2)?)?;
        fv1[j] = f1;
        fv2[j] = f2;
        res_k = res_k + T::lit(WGK[j]) * (f1 + f2);
        res_abs = res_abs + T::lit(WGK[j]) * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g = res_g + T::lit(WG[j / 2]) * (f1 + f2);
        }
    }
    let mean = res_k * half;
    let mut res_asc = T::lit(WGK[10]) * (fc - mean).abs();
    for j in 0..10 {
        res_asc = res_asc + T::lit(WGK[j]) * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let scale = half_len.abs();
    let value = res_k * half_len;
    res_abs = res_abs * scale;
    res_asc = res_asc * scale;
    let mut err = ((res_k - res_g) * half_len).abs();
    if res_asc != T::zero() && err != T::zero() {
        let ratio = (T::lit(200.0) * err / res_asc).powf(T::lit(1.5));
        err = res_asc * ratio.min(T::one());
    }
    let round_off = T::lit(50.0) * T::epsilon() * res_abs;
    if res_abs > T::min_positive_value() / (T::lit(50.0) * T::epsilon()) {
        err = err.max(round_off);
    }
    Ok((value, err))
}

/// Adaptive integration of a fallible integrand over [a, b].
pub fn integrate_1d_with<T: Real, F>(mut f: F, a: T, b: T, spec: &QuadratureSpec) -> Result<Integral<T>>
where
    F: FnMut(T) -> Result<T>,
{
    spec.validate()?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::InvalidParameter("integration bounds must be finite".into()));
    }
    if a == b {
        return Ok(Integral {
            value: T::zero(),
            error: T::zero(),
            evaluations: 0,
        });
    }
    let abs_tol = T::tol(spec.abs_tol);
    let rel_tol = T::tol(spec.rel_tol);
    let min_width = T::lit(1e3) * T::epsilon() * a.abs().max(b.abs()).max(T::min_positive_value());

    let (value, error) = kronrod21(&mut f, a, b)?;
    let mut evaluations = 21;
    let mut panels = vec![Panel {
        a,
        b,
        value,
        error,
        splittable: true,
    }];

    loop {
        let total = panels.iter().fold(T::zero(), |s, p| s + p.value);
        let total_err = panels.iter().fold(T::zero(), |s, p| s + p.error);
        if total_err <= abs_tol.max(rel_tol * total.abs()) {
            break;
        }
        let worst = panels
            .iter()
            .enumerate()
            .filter(|(_, p)| p.splittable)
            .fold(None::<(usize, T)>, |best, (i, p)| match best {
                Some((_, e)) if e >= p.error => best,
                _ => Some((i, p.error)),
            });
        let Some((idx, _)) = worst else {
            return Err(not_reached(&panels, panels.len()));
        };
        if panels.len() >= spec.max_subdivisions {
            return Err(not_reached(&panels, panels.len()));
        }
        let p = panels[idx];
        let mid = (p.a + p.b) * T::lit(0.5);
        if (p.b - p.a).abs() <= min_width || mid == p.a || mid == p.b {
            panels[idx].splittable = false;
            continue;
        }
        let (v1, e1) = kronrod21(&mut f, p.a, mid)?;
        let (v2, e2) = kronrod21(&mut f, mid, p.b)?;
        evaluations += 42;
        panels[idx] = Panel {
            a: p.a,
            b: mid,
            value: v1,
            error: e1,
            splittable: true,
        };
        panels.insert(
            idx + 1,
            Panel {
                a: mid,
                b: p.b,
                value: v2,
                error: e2,
                splittable: true,
            },
        );
    }

    // panels are kept in left-to-right order
    let value = panels.iter().fold(T::zero(), |s, p| s + p.value);
    let error = panels.iter().fold(T::zero(), |s, p| s + p.error);
    Ok(Integral {
        value,
        error,
        evaluations,
    })
}

fn not_reached<T: Real>(panels: &[Panel<T>], subdivisions: usize) -> Error {
    let estimate = panels.iter().fold(T::zero(), |s, p| s + p.value);
    let error = panels.iter().fold(T::zero(), |s, p| s + p.error);
    Error::ToleranceNotReached {
        estimate: estimate.to_f64_lossy(),
        error: error.to_f64_lossy(),
        subdivisions,
    }
}

/// Adaptive integration of `f` over [a, b].
pub fn integrate_1d<T: Real, F>(mut f: F, a: T, b: T, spec: &QuadratureSpec) -> Result<Integral<T>>
where
    F: FnMut(T) -> T,
{
    integrate_1d_with(|x| Ok(f(x)), a, b, spec)
}

/// Iterated adaptive integration of `f(x, y)` over `[x0, x1] × [y0, y1]`.
///
/// Each outer node runs its own inner adaptive integral at a tenth of the
/// outer tolerance (scaled by the outer width). The reported error adds the
/// outer estimate and the worst inner estimate times the outer width.
pub fn integrate_2d<T: Real, F>(f: F, (x0, x1): (T, T), (y0, y1): (T, T), spec: &QuadratureSpec) -> Result<Integral<T>>
where
    F: Fn(T, T) -> T,
{
    spec.validate()?;
    let width = (x1 - x0).abs().to_f64_lossy().max(f64::MIN_POSITIVE);
    let inner = QuadratureSpec {
        abs_tol: 0.1 * spec.abs_tol / width,
        rel_tol: 0.1 * spec.rel_tol,
        max_subdivisions: spec.max_subdivisions,
    };
    let mut worst_inner = T::zero();
    let mut inner_evals = 0usize;
    let outer = integrate_1d_with(
        |x| {
            let r = integrate_1d(|y| f(x, y), y0, y1, &inner)?;
            worst_inner = worst_inner.max(r.error);
            inner_evals += r.evaluations;
            Ok(r.value)
        },
        x0,
        x1,
        spec,
    )?;
    Ok(Integral {
        value: outer.value,
        error: outer.error + worst_inner * T::lit(width),
        evaluations: inner_evals,
    })
}
