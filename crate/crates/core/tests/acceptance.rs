//! Acceptance suite. Runs every criterion, prints one line each and exits
//! nonzero if any fails.

use std::f64::consts::{E, FRAC_PI_2, PI};
use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use tomolab::entropy::{entropy_scaling_offset, position_momentum_entropies, shannon_entropy, von_neumann_entropy};
use tomolab::gaussian_oracle::{self, projected_covariance};
use tomolab::inequalities::{
    check_multimode_renyi, check_optical_renyi, check_optical_shannon, renyi_rhs, MultimodeVariant, QParameter,
};
use tomolab::tomography::{
    optical_tomogram, reconstruct_density, symplectic_tomogram, ModeSource, ReconstructionSettings,
};
use tomolab::{
    DensityMatrix, FockSuperposition, GaussianStateSpec, ModeGrid, MultimodeProductState,
    RotationAngle, State, SymplecticFrame,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Outcome);

const Q_GRID: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 0.9];
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

fn ln_pi_e() -> f64 {
    (PI * E).ln()
}

fn angle(t: f64) -> RotationAngle {
    RotationAngle::new(t).unwrap()
}

fn q(v: f64) -> QParameter {
    QParameter::new(v).unwrap()
}

fn test_states() -> Vec<(&'static str, FockSuperposition)> {
    vec![
        ("vacuum", FockSuperposition::vacuum()),
        ("one-photon", FockSuperposition::number_state(1).unwrap()),
        ("(|0>+|1>)/sqrt2", FockSuperposition::from_real(&[1.0, 1.0]).unwrap()),
    ]
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Tiny deterministic generator for the random frames.
struct SplitMix(u64);

impl SplitMix {
    fn next_f64(&mut self) -> f64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        ((z ^ (z >> 31)) >> 11) as f64 / (1u64 << 53) as f64
    }
}

fn ac1() -> Outcome {
    let vac = State::Fock(FockSuperposition::vacuum());
    let sq = State::Gaussian(GaussianStateSpec::squeezed_vacuum(1.0).map_err(|e| e.to_string())?);
    let mut worst_vac = 0.0f64;
    let mut min_sq = f64::INFINITY;
    for k in 0..=8 {
        let t = k as f64 * PI / 8.0;
        let r = check_optical_shannon(&vac, angle(t)).map_err(|e| e.to_string())?;
        worst_vac = worst_vac.max((r.lhs - ln_pi_e()).abs());
        let s = check_optical_shannon(&sq, angle(t)).map_err(|e| e.to_string())?;
        min_sq = min_sq.min(s.margin);
        if k == 0 || k == 4 {
            ensure(s.margin.abs() <= 1e-4, || format!("squeezed margin {:.3e} at theta={t}", s.margin))?;
        }
    }
    ensure(worst_vac <= 1e-4, || format!("vacuum |lhs - ln(pi e)| = {worst_vac:.3e}"))?;
    ensure(min_sq >= -1e-6, || format!("squeezed min margin {min_sq:.3e}"))?;
    Ok(format!("vacuum max dev {worst_vac:.2e}, squeezed min margin {min_sq:.2e}"))
}

fn ac2() -> Outcome {
    let vac = State::Fock(FockSuperposition::vacuum());
    let mut worst = 0.0f64;
    for t in [0.0, PI / 5.0, PI / 3.0] {
        for qv in Q_GRID {
            let r = check_optical_renyi(&vac, angle(t), q(qv)).map_err(|e| e.to_string())?;
            worst = worst.max(r.margin.abs());
        }
    }
    ensure(worst <= 1e-4, || format!("vacuum max |margin| {worst:.3e}"))?;
    // Closed form: vacuum tomograms are N(0, 1/2) at every angle.
    let g = GaussianStateSpec::vacuum(1);
    let qp = q(0.5);
    let pa = projected_covariance(&g, &[SymplecticFrame::optical(FRAC_PI_2)]).map_err(|e| e.to_string())?;
    let pb = projected_covariance(&g, &[SymplecticFrame::optical(0.0)]).map_err(|e| e.to_string())?;
    let la = gaussian_oracle::gaussian_log_renyi_integral(&pa, qp.alpha()).map_err(|e| e.to_string())?;
    let lb = gaussian_oracle::gaussian_log_renyi_integral(&pb, qp.beta()).map_err(|e| e.to_string())?;
    let lhs = ((0.5 - 1.0) / 0.5) * la + ((0.5 + 1.0) / 0.5) * lb;
    let rhs = renyi_rhs(qp, 1);
    ensure((lhs - 2.099501).abs() <= 1e-6 && (rhs - 2.099501).abs() <= 1e-6, || {
        format!("closed form lhs {lhs:.9}, rhs {rhs:.9}")
    })?;
    Ok(format!("max |margin| {worst:.2e}, closed form lhs = rhs = {rhs:.6}"))
}

fn ac3() -> Outcome {
    let one = State::Fock(FockSuperposition::number_state(1).unwrap());
    // Entropy of (2/sqrt(pi)) X^2 e^{-X^2}: 3/2 - ln(2/sqrt(pi)) - psi(3/2),
    // psi(3/2) = 2 - gamma - 2 ln 2.
    let digamma = 2.0 - EULER_GAMMA - 2.0 * 2f64.ln();
    let s_oracle = 1.5 - (2.0 / PI.sqrt()).ln() - digamma;
    let oracle_margin = 2.0 * s_oracle - ln_pi_e();
    let r = check_optical_shannon(&one, angle(0.0)).map_err(|e| e.to_string())?;
    ensure((r.margin - oracle_margin).abs() <= 1e-6, || {
        format!("margin {:.9} vs digamma oracle {oracle_margin:.9}", r.margin)
    })?;
    ensure((r.margin - 0.541093).abs() <= 1e-3, || format!("margin {:.6} vs 0.541093", r.margin))?;
    let mut min_renyi = f64::INFINITY;
    for t in [0.0, PI / 5.0, PI / 3.0] {
        for qv in Q_GRID {
            let rr = check_optical_renyi(&one, angle(t), q(qv)).map_err(|e| e.to_string())?;
            min_renyi = min_renyi.min(rr.margin);
        }
    }
    ensure(min_renyi > 0.0, || format!("Rényi margin {min_renyi:.3e} not positive"))?;
    Ok(format!("Shannon margin {:.6} (oracle {oracle_margin:.6}), min Rényi margin {min_renyi:.4}", r.margin))
}

fn ac4() -> Outcome {
    let grid = ModeGrid::default();
    let mut rng = SplitMix(0x5eed);
    let mut worst = 0.0f64;
    for (_, s) in test_states() {
        for _ in 0..4 {
            let r = 0.5 + 1.5 * rng.next_f64();
            let th = 2.0 * PI * rng.next_f64();
            let frame = SymplecticFrame::polar(r, th).map_err(|e| e.to_string())?;
            let base = symplectic_tomogram(&s, frame, &grid).map_err(|e| e.to_string())?;
            for lambda in [0.5, 2.0, 3.0] {
                let scaled_grid = grid.scaled(lambda).map_err(|e| e.to_string())?;
                let f = frame.scaled(lambda).map_err(|e| e.to_string())?;
                let w = symplectic_tomogram(&s, f, &scaled_grid).map_err(|e| e.to_string())?;
                for (a, b) in w.weights().iter().zip(base.weights()) {
                    worst = worst.max((a - b / lambda).abs());
                }
            }
        }
    }
    ensure(worst <= 1e-6, || format!("max homogeneity deviation {worst:.3e}"))?;
    Ok(format!("max |w(λX,λμ,λν) − w/|λ|| = {worst:.2e}"))
}

fn ac5() -> Outcome {
    let theta = angle(0.7);
    let mut vac_value = f64::NAN;
    let mut worst = 0.0f64;
    for (name, s) in test_states() {
        let offs = [0.5, 1.0, 2.0, 4.0]
            .iter()
            .map(|&r| entropy_scaling_offset(&s, theta, r))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?;
        let spread = offs.iter().cloned().fold(f64::NEG_INFINITY, f64::max) - offs.iter().cloned().fold(f64::INFINITY, f64::min);
        worst = worst.max(spread);
        if name == "vacuum" {
            vac_value = offs[1];
        }
    }
    ensure(worst <= 1e-5, || format!("offset spread {worst:.3e}"))?;
    let half_ln_pi_e = 0.5 * ln_pi_e();
    ensure((vac_value - half_ln_pi_e).abs() <= 1e-6, || format!("vacuum offset {vac_value:.9}"))?;
    Ok(format!("max spread {worst:.2e}, vacuum offset {vac_value:.6}"))
}

fn ac6() -> Outcome {
    let vac = FockSuperposition::vacuum();
    let two_vac = State::Product(
        MultimodeProductState::new(vec![vac.clone().into(), vac.into()]).map_err(|e| e.to_string())?,
    );
    let rhs = renyi_rhs(q(0.5), 2);
    ensure((rhs - 4.199002).abs() <= 1e-6, || format!("renyi_rhs(0.5, 2) = {rhs:.9}"))?;
    let mut worst_vac = 0.0f64;
    for qv in Q_GRID {
        for variant in [MultimodeVariant::Optical, MultimodeVariant::Symplectic] {
            let frames = [SymplecticFrame::polar(1.5, 0.4).unwrap(), SymplecticFrame::polar(0.8, 1.1).unwrap()];
            let r = check_multimode_renyi(&two_vac, &frames, q(qv), variant).map_err(|e| e.to_string())?;
            worst_vac = worst_vac.max(r.margin.abs());
        }
    }
    ensure(worst_vac <= 1e-3, || format!("two-mode vacuum max |margin| {worst_vac:.3e}"))?;
    let tmsv = State::Gaussian(GaussianStateSpec::two_mode_squeezed_vacuum(0.8).map_err(|e| e.to_string())?);
    let mut worst_tmsv = 0.0f64;
    for phi in [0.0, 0.3, 1.0, 2.2] {
        for qv in Q_GRID {
            let frames = [SymplecticFrame::optical(phi), SymplecticFrame::optical(-phi)];
            let r = check_multimode_renyi(&tmsv, &frames, q(qv), MultimodeVariant::Optical).map_err(|e| e.to_string())?;
            worst_tmsv = worst_tmsv.max(r.margin.abs());
        }
    }
    ensure(worst_tmsv <= 1e-10, || format!("two-mode squeezed max |margin| {worst_tmsv:.3e}"))?;
    Ok(format!("two-mode vacuum max |margin| {worst_vac:.2e}, TMSV at (φ,−φ) {worst_tmsv:.2e}"))
}

fn ac7() -> Outcome {
    let dev = (renyi_rhs(q(1e-3), 1) - ln_pi_e()).abs();
    ensure(dev <= 1e-5, || format!("|renyi_rhs(1e-3) - ln(pi e)| = {dev:.3e}"))?;
    let mut worst = 0.0f64;
    for n in [0, 1] {
        let s = State::Fock(FockSuperposition::number_state(n).unwrap());
        let renyi = check_optical_renyi(&s, angle(0.3), q(1e-3)).map_err(|e| e.to_string())?;
        let shannon = check_optical_shannon(&s, angle(0.3)).map_err(|e| e.to_string())?;
        worst = worst.max((renyi.lhs - shannon.lhs).abs());
    }
    ensure(worst <= 5e-3, || format!("|B4 lhs - Shannon lhs| = {worst:.3e}"))?;
    Ok(format!("rhs deviation {dev:.2e}, lhs deviation {worst:.2e}"))
}

fn ac8() -> Outcome {
    let grid = ModeGrid::symmetric(6.0, 65).map_err(|e| e.to_string())?;
    let settings = ReconstructionSettings::default();
    let mut summary = String::new();
    for (name, s) in test_states() {
        let rho = reconstruct_density(&ModeSource::Fock(&s), &grid, &settings).map_err(|e| e.to_string())?;
        let m = rho.elements();
        let herm = (m - m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        let fid = rho.fidelity(&s.sample(&grid)).map_err(|e| e.to_string())?;
        ensure(herm <= 1e-8, || format!("{name}: Hermiticity defect {herm:.3e}"))?;
        ensure((rho.trace() - 1.0).abs() <= 1e-9, || format!("{name}: trace {}", rho.trace()))?;
        ensure(fid >= 0.99, || format!("{name}: fidelity {fid:.6}"))?;
        let _ = write!(summary, "{name} F={fid:.6} ");
    }
    Ok(summary.trim_end().to_string())
}

fn ac9() -> Outcome {
    let grid = ModeGrid::symmetric(8.0, 128).map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    for (_, s) in test_states() {
        let v = von_neumann_entropy(&DensityMatrix::pure(&s.sample(&grid))).map_err(|e| e.to_string())?;
        worst = worst.max(v.value().abs());
    }
    let sq = GaussianStateSpec::squeezed_vacuum(0.5).map_err(|e| e.to_string())?;
    let v = von_neumann_entropy(&DensityMatrix::pure(&sq.wavefunction(&grid).map_err(|e| e.to_string())?))
        .map_err(|e| e.to_string())?;
    worst = worst.max(v.value().abs());
    ensure(worst <= 1e-6, || format!("pure-state entropy {worst:.3e}"))?;
    let psi0 = FockSuperposition::vacuum().sample(&grid);
    let psi1 = FockSuperposition::number_state(1).unwrap().sample(&grid);
    let mix = DensityMatrix::mixture(&[(0.5, psi0), (0.5, psi1)]).map_err(|e| e.to_string())?;
    let s = von_neumann_entropy(&mix).map_err(|e| e.to_string())?.value();
    ensure((s - 2f64.ln()).abs() <= 1e-4, || format!("mixture entropy {s:.9}"))?;
    Ok(format!("pure max {worst:.2e}, mixture {s:.6}"))
}

fn ac10() -> Outcome {
    let grid = ModeGrid::default();
    let mut worst_path = 0.0f64;
    for (_, s) in test_states().into_iter().chain([("superposition", FockSuperposition::from_real(&[0.6, -0.3, 0.5, 0.2]).unwrap())]) {
        let sampled = s.sample(&grid);
        for k in 0..8 {
            let t = angle(k as f64 * PI / 8.0 + 0.1);
            let a = optical_tomogram(&s, t, &grid).map_err(|e| e.to_string())?;
            let b = optical_tomogram(&sampled, t, &grid).map_err(|e| e.to_string())?;
            for (x, y) in a.weights().iter().zip(b.weights()) {
                worst_path = worst_path.max((x - y).abs());
            }
        }
    }
    ensure(worst_path <= 1e-6, || format!("Fock vs kernel {worst_path:.3e}"))?;
    let mut worst_ent = 0.0f64;
    let cases = [
        (GaussianStateSpec::vacuum(1), ModeGrid::default()),
        (GaussianStateSpec::squeezed_vacuum(0.5).unwrap(), ModeGrid::symmetric(14.0, 1024).unwrap()),
    ];
    for (g, grid) in cases {
        let psi = g.wavefunction(&grid).map_err(|e| e.to_string())?;
        let (sx, sp) = position_momentum_entropies(&State::Grid(psi.clone())).map_err(|e| e.to_string())?;
        let (ox, op) = gaussian_oracle::position_momentum_entropies(&g);
        worst_ent = worst_ent.max((sx.value() - ox.value()).abs()).max((sp.value() - op.value()).abs());
        for t in [0.3, 1.2] {
            let w = optical_tomogram(&psi, angle(t), &grid).map_err(|e| e.to_string())?;
            let proj = projected_covariance(&g, &[SymplecticFrame::optical(t)]).map_err(|e| e.to_string())?;
            let o = gaussian_oracle::gaussian_shannon_entropy(&proj).value();
            worst_ent = worst_ent.max((shannon_entropy(&w).value() - o).abs());
        }
    }
    ensure(worst_ent <= 1e-6, || format!("grid vs Gaussian oracle {worst_ent:.3e}"))?;
    Ok(format!("path deviation {worst_path:.2e}, entropy deviation {worst_ent:.2e}"))
}

fn gaussian_rows(theta: f64, var: f64, scale: f64, out: &mut String) {
    for x in ModeGrid::default().points() {
        let w = scale * (-x * x / (2.0 * var)).exp() / (2.0 * PI * var).sqrt();
        let _ = writeln!(out, "{theta:.16e},{x:.16e},{w:.16e}");
    }
}

fn run_cli(args: &[&str]) -> i32 {
    tomolab::cli::run(std::iter::once("tomolab").chain(args.iter().copied()))
}

fn ac11() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let write = |name: &str, rows: &[(f64, f64, f64)]| -> Result<String, String> {
        let mut s = String::from("theta,X,w\n");
        for &(t, v, scale) in rows {
            gaussian_rows(t, v, scale, &mut s);
        }
        let p = dir.path().join(name);
        std::fs::write(&p, s).map_err(|e| e.to_string())?;
        Ok(p.to_string_lossy().into_owned())
    };
    let consistent = write("vacuum.csv", &[(0.0, 0.5, 1.0), (FRAC_PI_2, 0.5, 1.0)])?;
    let broken = write("broken.csv", &[(0.0, 0.5, 0.8), (FRAC_PI_2, 0.5, 1.0)])?;
    let narrow = write("narrow.csv", &[(0.0, 0.05, 1.0), (FRAC_PI_2, 0.05, 1.0)])?;
    let out = |n: &str| dir.path().join(n).to_string_lossy().into_owned();
    let codes = [
        run_cli(&["validate", "--data", &consistent, "--out", &out("a.json")]),
        run_cli(&["validate", "--data", &broken, "--out", &out("b.json")]),
        run_cli(&["validate", "--data", &narrow, "--out", &out("c.json")]),
    ];
    ensure(codes == [0, 2, 1], || format!("exit codes {codes:?}"))?;

    let cfg = dir.path().join("sweep.json");
    std::fs::write(
        &cfg,
        r#"{"state": {"kind": "fock", "coefficients": [0.6, [0, 0.8]]},
            "checks": ["optical_shannon", "optical_renyi", "symplectic_renyi"],
            "theta": {"start": 0, "stop": 3, "count": 4}, "q": {"values": [0.2, 0.7]}, "r": 1.7}"#,
    )
    .map_err(|e| e.to_string())?;
    let cfg = cfg.to_string_lossy().into_owned();
    let mut files = Vec::new();
    for (i, fmt) in ["json", "json", "csv", "csv"].iter().enumerate() {
        let p = out(&format!("r{i}.{fmt}"));
        let code = run_cli(&["check", "--config", &cfg, "--format", fmt, "--out", &p]);
        ensure(code == 0, || format!("check exit {code}"))?;
        files.push(std::fs::read(Path::new(&p)).map_err(|e| e.to_string())?);
    }
    ensure(files[0] == files[1] && files[2] == files[3], || "reports differ between identical runs".into())?;
    Ok("validate exit codes [0, 2, 1]; repeated reports byte-identical".into())
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("AC1", "Gaussian Shannon saturation", ac1),
        ("AC2", "Gaussian Rényi saturation", ac2),
        ("AC3", "strict inequality for one photon", ac3),
        ("AC4", "symplectic homogeneity", ac4),
        ("AC5", "entropy scaling law", ac5),
        ("AC6", "multimode relations", ac6),
        ("AC7", "q -> 0 limit", ac7),
        ("AC8", "density-matrix reconstruction", ac8),
        ("AC9", "von Neumann entropy", ac9),
        ("AC10", "path consistency", ac10),
        ("AC11", "CLI contract", ac11),
    ];
    let mut failed = 0;
    for (id, title, f) in criteria {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {id} {title}: {detail} ({secs:.1}s)"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {id} {title}: {detail} ({secs:.1}s)");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
