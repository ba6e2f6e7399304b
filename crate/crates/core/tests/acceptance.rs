//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any
//! criterion fails.

mod common;

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use trapnoise_core::angular_momentum::{
    clebsch_gordan, hyperfine_matrix_element_sq, zeeman_matrix_element, AtomPreset, HyperfineLevel,
};
use trapnoise_core::constants::{
    ATOMIC_MASS_UNIT, BOHR_MAGNETON, BOLTZMANN, ELECTRON_G_FACTOR, ELEMENTARY_CHARGE, HBAR, MU_0,
};
use trapnoise_core::nearfield::spectra::blackbody_force_gradient_zz;
use trapnoise_core::nearfield::tensors::{
    g_asymptotic, g_exact, g_perfect_conductor, h_asymptotic, h_exact, SurfaceResponse, TensorPair,
};
use trapnoise_core::physical_model::{dielectric_function, skin_depth};
use trapnoise_core::quadrature::QuadratureOptions;
use trapnoise_core::rates::{
    evolve_populations, hyperfine_loss_rate, ion_heating_rate, magnetic_moments, max_step, spin_heating_rate,
    zeeman_blackbody_rate, zeeman_loss_rate,
};
use trapnoise_core::{
    Axis, HalfInteger, LadderState, Material, MethodChoice, RateOptions, SpectrumOptions, SpinSystem, SurfaceGeometry,
    ThermalEnvironment, TrapBasisAngle, TrapConfig, TrapCoupling,
};

use common::{coupled_states, h, sandwich, small_systems, spin_operator};

type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

struct Outcome {
    pass: bool,
    detail: String,
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

/// Centred log-log slope of `f` at `x` with a ±5% step.
fn slope(f: impl Fn(f64) -> f64, x: f64) -> f64 {
    let r = 1.05f64;
    (f(x * r) / f(x / r)).ln() / (r * r).ln()
}

const MHZ: f64 = 2.0 * PI * 1e6;

fn criterion_1() -> Outcome {
    let pc = SurfaceResponse::lossy(Complex64::new(0.0, 1e12)).unwrap();
    let opts = QuadratureOptions::default();
    let mut worst: f64 = 0.0;
    for kz in [0.1, 0.5, 1.0, 5.0] {
        let q = g_exact(kz, pc, &opts).unwrap().value;
        let c = g_perfect_conductor(kz).unwrap();
        worst = worst
            .max(rel(q.parallel, c.parallel))
            .max(rel(q.perpendicular, c.perpendicular));
    }
    let small = g_perfect_conductor(1e-3).unwrap();
    let limit = (small.parallel + 1.0).abs().max((small.perpendicular - 1.0).abs());
    Outcome {
        pass: worst < 1e-3 && limit < 1e-2,
        detail: format!(
            "max rel dev quadrature vs closed form {worst:.2e} (<1e-3); |g_par+1|,|g_perp-1| at kz=1e-3: {limit:.2e} (<1e-2)"
        ),
    }
}

fn criterion_2() -> Outcome {
    let m = Material::copper();
    let eps = dielectric_function(&m, MHZ).unwrap();
    let delta = skin_depth(&m, MHZ).unwrap();
    let k = MHZ / trapnoise_core::constants::SPEED_OF_LIGHT;
    let s = SurfaceResponse::lossy(eps).unwrap();
    let opts = QuadratureOptions::default();
    let dev = |a: TensorPair, b: TensorPair| rel(a.parallel, b.parallel).max(rel(a.perpendicular, b.perpendicular));

    let mut lines = Vec::new();
    let mut pass = true;
    let mut ratios = Vec::new();
    for (ratio, tol) in [(0.01, 0.10), (30.0, 0.15), (100.0, 0.15)] {
        let z = ratio * delta;
        let kz = k * z;
        let ge = g_exact(kz, s, &opts).unwrap().value;
        let he = h_exact(kz, s, &opts).unwrap().value;
        let ga = g_asymptotic(kz, ratio).unwrap().value;
        let ha = h_asymptotic(kz, ratio).unwrap().value;
        let (dg, dh) = (dev(ge, ga), dev(he, ha));
        pass &= dg < tol && dh < tol && kz < 1e-3;
        lines.push(format!("z={ratio}δ: g {dg:.3} h {dh:.3} (<{tol})"));
        ratios.push((ratio, ge.anisotropy(), he.anisotropy()));
    }
    let (_, g_near, h_near) = ratios[0];
    let (_, _, h_far) = ratios[2];
    let aniso = rel(g_near, 2.0).max(rel(h_near, 2.0)).max(rel(h_far, 2.0));
    pass &= aniso < 0.05;
    Outcome {
        pass,
        detail: format!(
            "{}; g_perp/g_par(δ/100)={g_near:.4}, h_perp/h_par(δ/100)={h_near:.4}, h_perp/h_par(100δ)={h_far:.4} (within 5% of 2)",
            lines.join(", ")
        ),
    }
}

fn ion_rate(z: f64, method: MethodChoice) -> f64 {
    let trap = TrapConfig::ion(MHZ, 40.0 * ATOMIC_MASS_UNIT, z).unwrap();
    let opts = RateOptions::new(SpectrumOptions::default().with_method(method));
    ion_heating_rate(
        &trap,
        &Material::copper(),
        &ThermalEnvironment::room_temperature(),
        &opts,
    )
    .unwrap()
    .rate
}

fn criterion_3() -> Outcome {
    let delta = skin_depth(&Material::copper(), MHZ).unwrap();
    let near = slope(|z| ion_rate(z, MethodChoice::Auto), delta / 30.0);
    let far = slope(|z| ion_rate(z, MethodChoice::Auto), 30.0 * delta);
    let near_exact = slope(|z| ion_rate(z, MethodChoice::Exact), delta / 30.0);
    let far_exact = slope(|z| ion_rate(z, MethodChoice::Exact), 30.0 * delta);
    let z = 1e-6;
    let oracle = ELEMENTARY_CHARGE.powi(2) * BOLTZMANN * 300.0 * 1.7e-8 * (1.0 + z / delta)
        / (8.0 * PI * HBAR * 40.0 * ATOMIC_MASS_UNIT * MHZ * z.powi(3));
    let gamma = ion_rate(z, MethodChoice::Auto);
    let pass = [near, near_exact].iter().all(|s| (s + 3.0).abs() < 0.1)
        && [far, far_exact].iter().all(|s| (s + 2.0).abs() < 0.1)
        && rel(gamma, oracle) < 0.2
        && rel(gamma, 1.6e3) < 0.2;
    Outcome {
        pass,
        detail: format!(
            "slope(δ/30)={near:.3} [exact {near_exact:.3}], slope(30δ)={far:.3} [exact {far_exact:.3}]; Γ(1 μm)={gamma:.1} s⁻¹ vs oracle {oracle:.1}"
        ),
    }
}

fn spin_half_flip() -> (SpinSystem, HalfInteger, HalfInteger) {
    (SpinSystem::electron(), h(1), h(-1))
}

fn criterion_4() -> Outcome {
    let env = ThermalEnvironment::room_temperature();
    let (sys, mi, mf) = spin_half_flip();
    let perpendicular_bias = TrapBasisAngle::new(PI / 2.0).unwrap();
    let w = 100.0 * MHZ;
    let bb = zeeman_blackbody_rate(&sys, mi, mf, w, &env, perpendicular_bias).unwrap();
    let delta = skin_depth(&Material::copper(), w).unwrap();
    let mut slopes = Vec::new();
    for method in [MethodChoice::Auto, MethodChoice::Exact] {
        let rate = |z: f64| {
            zeeman_loss_rate(
                &sys,
                mi,
                mf,
                w,
                &Material::copper(),
                &env,
                &SurfaceGeometry::new(z).unwrap(),
                perpendicular_bias,
                &RateOptions::new(SpectrumOptions::default().with_method(method)),
            )
            .unwrap()
            .rate
        };
        slopes.push((slope(rate, delta / 30.0), slope(rate, 30.0 * delta)));
    }
    let factor = (bb / 1e-13).max(1e-13 / bb);
    let pass = factor < 3.0
        && slopes
            .iter()
            .all(|(n, f)| (n + 1.0).abs() < 0.1 && (f + 4.0).abs() < 0.15);
    Outcome {
        pass,
        detail: format!(
            "blackbody rate {bb:.3e} s⁻¹ (factor {factor:.2} from 1e-13, <3); slopes auto {:.3}/{:.3}, exact {:.3}/{:.3} (−1±0.1 at δ/30, −4±0.15 at 30δ)",
            slopes[0].0, slopes[0].1, slopes[1].0, slopes[1].1
        ),
    }
}

fn criterion_5() -> Outcome {
    let env = ThermalEnvironment::room_temperature();
    let omega = 2.0 * PI * 1e5;
    let mass = 40.0 * ATOMIC_MASS_UNIT;
    let z = 1e-6;
    let theta = TrapBasisAngle::new(0.0).unwrap();
    let trap = TrapConfig::new(
        omega,
        mass,
        [0.0, 0.0, 1.0],
        SurfaceGeometry::new(z).unwrap(),
        TrapCoupling::Spin {
            system: SpinSystem::electron(),
            m: h(1),
            theta,
        },
    )
    .unwrap();
    let gamma = spin_heating_rate(&trap, &Material::copper(), &env, &RateOptions::default())
        .unwrap()
        .rate;
    let closed = MU_0 * MU_0 * BOLTZMANN * 300.0 * (BOHR_MAGNETON * ELECTRON_G_FACTOR).powi(2)
        / (64.0 * PI * HBAR * omega * mass * 1.7e-8 * z.powi(3));
    let moments = magnetic_moments(&SpinSystem::electron(), h(1), theta).unwrap();
    let bb = trap.ground_state_size().powi(2) / (HBAR * HBAR) * blackbody_force_gradient_zz(&env, -omega, &moments);
    Outcome {
        pass: rel(gamma, closed) < 0.2 && bb < 1e-35,
        detail: format!(
            "Γ(1 μm)={gamma:.4e} s⁻¹ vs closed form {closed:.4e} (ratio {:.3}, need 1±0.2); blackbody {bb:.2e} s⁻¹ (<1e-35)",
            gamma / closed
        ),
    }
}

fn criterion_6() -> Outcome {
    let env = ThermalEnvironment::room_temperature();
    let m = Material::copper();
    let rate = |atom: &AtomPreset, w: f64, z: f64| {
        hyperfine_loss_rate(
            &atom.system,
            w,
            &m,
            &env,
            &SurfaceGeometry::new(z).unwrap(),
            atom.f_lower,
            atom.f_upper,
            &RateOptions::default(),
        )
        .unwrap()
        .rate
    };
    let (rb, cs) = (AtomPreset::rb85(), AtomPreset::cs133());
    let delta_rb = skin_depth(&m, rb.hyperfine_angular_frequency()).unwrap();
    // the hyperfine sweep: 0.1 μm to 100 μm, 25 points per decade
    let zs: Vec<f64> = (0..=75).map(|k| 1e-7 * 10f64.powf(k as f64 / 25.0)).collect();
    let far: Vec<f64> = zs.iter().copied().filter(|&z| z >= 10.0 * delta_rb).collect();
    let ordered = far
        .iter()
        .all(|&z| rate(&cs, cs.hyperfine_angular_frequency(), z) < rate(&rb, rb.hyperfine_angular_frequency(), z));
    let z = 1e-4;
    let s_rb = slope(|w| rate(&rb, w, z), rb.hyperfine_angular_frequency());
    let s_cs = slope(|w| rate(&cs, w, z), cs.hyperfine_angular_frequency());
    let pass = ordered && !far.is_empty() && rel(s_rb, -1.5) < 0.1 && rel(s_cs, -1.5) < 0.1;
    Outcome {
        pass,
        detail: format!(
            "Cs < Rb at all {} sweep points with z ≥ 10δ_Rb ({:.2} μm): {ordered}; d lnΓ/d lnω at z=100 μm: Rb {s_rb:.3}, Cs {s_cs:.3} (−1.5±10%)",
            far.len(),
            10.0 * delta_rb * 1e6
        ),
    }
}

fn criterion_7() -> Outcome {
    let mut cg_dev: f64 = 0.0;
    let mut dense_dev: f64 = 0.0;
    for (s, i) in small_systems() {
        let sys = SpinSystem::new(h(s), h(i)).unwrap();
        for ms in h(s).projections() {
            for mi in h(i).projections() {
                let total: f64 = sys
                    .f_values()
                    .filter(|f| (ms + mi).twice().abs() <= f.twice())
                    .map(|f| clebsch_gordan(h(s), h(i), ms, mi, f, ms + mi).unwrap().powi(2))
                    .sum();
                cg_dev = cg_dev.max((total - 1.0).abs());
            }
        }
        for f in sys.f_values() {
            for fm in f.projections() {
                let total: f64 = h(s)
                    .projections()
                    .filter(|&ms| (fm - ms).twice().abs() <= i)
                    .map(|ms| clebsch_gordan(h(s), h(i), ms, fm - ms, f, fm).unwrap().powi(2))
                    .sum();
                cg_dev = cg_dev.max((total - 1.0).abs());
            }
        }
        let (basis, states) = coupled_states(s, i);
        for axis in Axis::ALL {
            let op = spin_operator(s, &basis, axis);
            for (ff, mf, vf) in &states {
                for (fi, mi, vi) in &states {
                    let oracle = sandwich(vf, &op, vi).norm_sqr();
                    let got = hyperfine_matrix_element_sq(
                        &sys,
                        HyperfineLevel::new(&sys, h(*ff), h(*mf)).unwrap(),
                        HyperfineLevel::new(&sys, h(*fi), h(*mi)).unwrap(),
                        axis,
                    )
                    .unwrap();
                    dense_dev = dense_dev.max((got - oracle).abs());
                }
            }
        }
    }
    let mut eq23_dev: f64 = 0.0;
    let mut sum_dev: f64 = 0.0;
    for theta in [0.0, PI / 4.0, PI / 2.0] {
        let t = TrapBasisAngle::new(theta).unwrap();
        let e = |a| zeeman_matrix_element(h(1), h(1), h(-1), a, t).unwrap();
        let expected = [
            Complex64::new(theta.cos() / 2.0, 0.0),
            Complex64::new(0.0, -0.5),
            Complex64::new(-theta.sin() / 2.0, 0.0),
        ];
        for (a, x) in Axis::ALL.iter().zip(expected) {
            eq23_dev = eq23_dev.max((e(*a) - x).norm());
        }
        let total: f64 = Axis::ALL.iter().map(|&a| e(a).norm_sqr()).sum();
        sum_dev = sum_dev.max((total - 0.5).abs());
    }
    Outcome {
        pass: cg_dev < 1e-12 && dense_dev < 1e-12 && eq23_dev <= f64::EPSILON && sum_dev < 1e-12,
        detail: format!(
            "CG unitarity dev {cg_dev:.1e}, dense-oracle dev {dense_dev:.1e} (<1e-12, {} spin systems); θ-basis elements dev {eq23_dev:.1e} (machine exact); Σ_α|.|² dev {sum_dev:.1e}",
            small_systems().len()
        ),
    }
}

fn criterion_8() -> Outcome {
    let (n, gp, gm) = (20usize, 1.0, 0.5);
    let dt = max_step(n, gp, gm);
    let steps = 1_000_000u64;
    let start = LadderState::ground(n).unwrap();
    let out = evolve_populations(&start, gp, gm, steps as f64 * dt, dt).unwrap();
    let drift = (out.total() - 1.0).abs();

    // rate matrix built independently, steady state = null vector
    let mut a = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        let kf = k as f64;
        if k + 1 < n {
            a[(k + 1, k)] += gm * (kf + 1.0);
            a[(k, k)] -= gm * (kf + 1.0);
        }
        if k > 0 {
            a[(k - 1, k)] += gp * kf;
            a[(k, k)] -= gp * kf;
        }
    }
    // symmetrise with the detailed-balance similarity transform
    let weights: Vec<f64> = (0..n).map(|k| (gm / gp).powi(k as i32).sqrt()).collect();
    let sym = DMatrix::from_fn(n, n, |r, c| a[(r, c)] * weights[c] / weights[r]);
    let sym = 0.5 * (&sym + sym.transpose());
    let eig = SymmetricEigen::new(sym);
    let (idx, _) =
        eig.eigenvalues.iter().enumerate().fold(
            (0, f64::NEG_INFINITY),
            |acc, (i, &l)| if l > acc.1 { (i, l) } else { acc },
        );
    let mut p: Vec<f64> = (0..n).map(|k| eig.eigenvectors[(k, idx)] * weights[k]).collect();
    let norm: f64 = p.iter().sum();
    p.iter_mut().for_each(|x| *x /= norm);
    let dev = out
        .populations()
        .iter()
        .zip(&p)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    let ratio_dev = (0..5)
        .map(|k| (out.populations()[k + 1] / out.populations()[k] - gm / gp).abs())
        .fold(0.0, f64::max);
    Outcome {
        pass: drift < 1e-9 && dev < 1e-6 && ratio_dev < 1e-6,
        detail: format!(
            "|Σp−1| after {steps} steps {drift:.1e} (<1e-9); max |p−p_eig| {dev:.1e}, ratio dev {ratio_dev:.1e} (<1e-6)"
        ),
    }
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 perfect-conductor oracle", criterion_1, Some(Duration::from_secs(1))),
        ("2 regime cross-checks", criterion_2, Some(Duration::from_secs(10))),
        ("3 ion heating sweep", criterion_3, Some(Duration::from_secs(5))),
        ("4 Zeeman loss sweep", criterion_4, None),
        ("5 spin heating", criterion_5, None),
        ("6 hyperfine ordering and scaling", criterion_6, None),
        ("7 angular momentum", criterion_7, None),
        ("8 population evolver", criterion_8, None),
    ];
    let release = !cfg!(debug_assertions);
    let mut failed = 0;
    for (name, run, budget) in criteria {
        let t0 = Instant::now();
        let outcome = run();
        let elapsed = t0.elapsed();
        // wall-clock budgets are judged on optimised builds only
        let in_time = match budget {
            Some(b) if release => elapsed < b,
            _ => true,
        };
        let pass = outcome.pass && in_time;
        if !pass {
            failed += 1;
        }
        let budget_note = match budget {
            Some(b) if release => format!(", budget {:.0?}", b),
            Some(b) => format!(", budget {:.0?} not enforced in debug build", b),
            None => String::new(),
        };
        println!(
            "{} criterion {name}: {} [{:.2?}{budget_note}]",
            if pass { "PASS" } else { "FAIL" },
            outcome.detail,
            elapsed
        );
    }
    println!("{} of 8 criteria passed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
