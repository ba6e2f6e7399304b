//! Globally adaptive 21-point Gauss-Kronrod integration of vector-valued
//! integrands over a sequence of panels.
//!
//! Every component shares the same subdivision tree; the interval with the
//! worst error relative to its component tolerance is bisected next. Running
//! out of the subdivision budget is an error that carries the partial
//! estimate.

use crate::error::{Error, Result};

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
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_745_815_573,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-8,
            abs_tol: 0.0,
            max_subdivisions: 10_000,
        }
    }
}

impl QuadratureOptions {
    pub fn with_rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral<const N: usize> {
    pub value: [f64; N],
    pub abs_error: [f64; N],
    pub subdivisions: usize,
}

impl<const N: usize> Integral<N> {
    /// Largest per-component `abs_error / |value|`.
    pub fn rel_error(&self) -> f64 {
        self.value
            .iter()
            .zip(&self.abs_error)
            .map(|(v, e)| if *v == 0.0 { *e } else { e / v.abs() })
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, Copy)]
struct Segment<const N: usize> {
    a: f64,
    b: f64,
    value: [f64; N],
    error: [f64; N],
    abs_value: [f64; N],
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut err = err.abs();
    if res_asc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / res_asc).powf(1.5);
        err = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    err
}

fn gauss_kronrod_21<const N: usize, F>(f: &F, a: f64, b: f64) -> Segment<N>
where
    F: Fn(f64) -> [f64; N],
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);

    let mut kronrod = [0.0; N];
    let mut gauss = [0.0; N];
    let mut res_abs = [0.0; N];
    let mut samples = [[0.0; N]; 21];
    samples[20] = fc;
    for c in 0..N {
        kronrod[c] = fc[c] * WGK[10];
        res_abs[c] = (fc[c] * WGK[10]).abs();
    }

    for (j, &x) in XGK.iter().take(10).enumerate() {
        let dx = half * x;
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        samples[2 * j] = f1;
        samples[2 * j + 1] = f2;
        for c in 0..N {
            let sum = f1[c] + f2[c];
            kronrod[c] += WGK[j] * sum;
            res_abs[c] += WGK[j] * (f1[c].abs() + f2[c].abs());
            // Gauss nodes are the odd-indexed Kronrod abscissae
            if j % 2 == 1 {
                gauss[c] += WG[j / 2] * sum;
            }
        }
    }

    let mut value = [0.0; N];
    let mut error = [0.0; N];
    let mut abs_value = [0.0; N];
    for c in 0..N {
        let mean = 0.5 * kronrod[c];
        let mut res_asc = WGK[10] * (fc[c] - mean).abs();
        for j in 0..10 {
            res_asc += WGK[j] * ((samples[2 * j][c] - mean).abs() + (samples[2 * j + 1][c] - mean).abs());
        }
        value[c] = kronrod[c] * half;
        abs_value[c] = res_abs[c] * half.abs();
        error[c] = rescale_error(
            (kronrod[c] - gauss[c]) * half,
            res_abs[c] * half.abs(),
            res_asc * half.abs(),
        );
    }

    Segment {
        a,
        b,
        value,
        error,
        abs_value,
    }
}

/// Integrates `f` over `[breakpoints[0], breakpoints[last]]`, starting from
/// one panel per consecutive breakpoint pair.
pub fn integrate_panels<const N: usize, F>(f: F, breakpoints: &[f64], opts: &QuadratureOptions) -> Result<Integral<N>>
where
    F: Fn(f64) -> [f64; N],
{
    if breakpoints.len() < 2 {
        return Err(Error::domain("need at least two breakpoints"));
    }
    if breakpoints
        .windows(2)
        .any(|w| w[1].partial_cmp(&w[0]) != Some(std::cmp::Ordering::Greater))
    {
        return Err(Error::domain("breakpoints must be strictly increasing"));
    }

    let mut segments: Vec<Segment<N>> = breakpoints
        .windows(2)
        .map(|w| gauss_kronrod_21(&f, w[0], w[1]))
        .collect();
    let mut subdivisions = 0usize;

    loop {
        let mut total = [0.0; N];
        let mut total_err = [0.0; N];
        let mut total_abs = [0.0; N];
        for s in &segments {
            for c in 0..N {
                total[c] += s.value[c];
                total_err[c] += s.error[c];
                total_abs[c] += s.abs_value[c];
            }
        }
        let tol: [f64; N] = std::array::from_fn(|c| {
            opts.abs_tol
                .max(opts.rel_tol * total[c].abs())
                // round-off floor when the integrand cancels strongly
                .max(100.0 * f64::EPSILON * total_abs[c])
        });

        if (0..N).all(|c| total_err[c] <= tol[c]) {
            return Ok(Integral {
                value: total,
                abs_error: total_err,
                subdivisions,
            });
        }
        if subdivisions >= opts.max_subdivisions {
            return Err(Error::Quadrature {
                subdivisions,
                estimate: total.to_vec(),
                abs_error: total_err.to_vec(),
            });
        }

        let (worst, _) = segments
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let score = (0..N)
                    .map(|c| if tol[c] > 0.0 { s.error[c] / tol[c] } else { s.error[c] })
                    .fold(0.0, f64::max);
                (i, score)
            })
            .fold((0, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc });

        let seg = segments.swap_remove(worst);
        let mid = 0.5 * (seg.a + seg.b);
        if !(mid > seg.a && mid < seg.b) {
            return Err(Error::Quadrature {
                subdivisions,
                estimate: total.to_vec(),
                abs_error: total_err.to_vec(),
            });
        }
        segments.push(gauss_kronrod_21(&f, seg.a, mid));
        segments.push(gauss_kronrod_21(&f, mid, seg.b));
        subdivisions += 1;
    }
}
