//! Derived quantities and regime logic: fidelity, scaling factors, the
//! inseparability window in `α²`, threshold finding, and parameter sweeps.

use std::fmt;
use std::str::FromStr;

use crate::cloner::{
    analytic_branches_both_sides, analytic_branches_one_side, ClonerParams,
};
use crate::error::{Error, Result};
use crate::qstate::{fidelity_with_pure, separability_verdict, EntangledInput, SeparabilityVerdict};
use crate::tol;

/// Which qubits of the input the machine clones.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Clone only qubit `a_II`; branches `(a_I, a_II)` and `(a_I, b_II)`.
    OneSide,
    /// Clone both qubits separately; branches `(a_I, a_II)` and `(b_I, b_II)`.
    TwoSide,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::OneSide => "one-side",
            Mode::TwoSide => "two-side",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "one-side" => Ok(Mode::OneSide),
            "two-side" => Ok(Mode::TwoSide),
            other => Err(format!("unknown mode `{other}` (expected `one-side` or `two-side`)")),
        }
    }
}

/// Scaling factors of the two marginals of the disentangling branch, in
/// register order. One-side cloning leaves `a_I` untouched (`s_b1 = 1`);
/// two-side cloning shrinks both marginals equally.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingFactors {
    pub s_b1: f64,
    pub s_b2: f64,
}

/// The range of `α²` for which the two-side kept branch stays inseparable.
/// Symmetric about `α² = 1/2`; empty when the corner term can never beat
/// the PT threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaWindow {
    pub lower: f64,
    pub upper: f64,
    pub nonempty: bool,
}

impl AlphaWindow {
    /// Strict interior test.
    pub fn contains(&self, alpha_sq: f64) -> bool {
        self.nonempty && alpha_sq > self.lower && alpha_sq < self.upper
    }
}

/// Everything the machine does at one `(p, α²)` point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeReport {
    pub mode: Mode,
    pub p: f64,
    pub alpha_sq: f64,
    pub kept_verdict: SeparabilityVerdict,
    pub other_verdict: SeparabilityVerdict,
    /// `⟨χ|ρ_kept|χ⟩`.
    pub fidelity: f64,
    pub scaling: ScalingFactors,
    /// Kept branch inseparable while the other branch is separable.
    pub goal_met: bool,
}

impl RegimeReport {
    /// Scaling factor of the cloned marginal(s) of the disentangling
    /// branch; the single `s` column reported by sweeps.
    pub fn s_factor(&self) -> f64 {
        self.scaling.s_b2
    }
}

/// Fidelity of the two-side kept branch against the input,
/// `F = ((1+p²)² − 8pq²α²β²)/N²`. State-dependent unless `q = 0`.
pub fn copy_fidelity(params: &ClonerParams, chi: &EntangledInput) -> f64 {
    let (p, q, n) = (params.p(), params.q(), params.n_factor());
    let one_plus_p_sq = 1.0 + p * p;
    let a2b2 = chi.alpha_sq() * (1.0 - chi.alpha_sq());
    (one_plus_p_sq * one_plus_p_sq - 8.0 * p * q * q * a2b2) / (n * n)
}

/// Scaling factors of the two-side disentangling branch: both marginals
/// shrink by `s = 2(1−p)/N`, independent of the input state.
pub fn scaling_factors_two_side(params: &ClonerParams) -> ScalingFactors {
    let s = 2.0 * params.q() / params.n_factor();
    ScalingFactors { s_b1: s, s_b2: s }
}

/// Scaling factor of the cloned marginal `b_II` of the one-side
/// disentangling branch, `s = 2q/N`; the untouched `a_I` marginal has
/// `s = 1`.
pub fn scaling_factor_one_side(params: &ClonerParams) -> f64 {
    params.eta_b()
}

/// The `α²` window of two-side broadcast success, with endpoints
/// `1/2 ∓ √(1/4 − K²)` where `K = (1+p²)(1−p)²/(4p²)`.
pub fn alpha_window(params: &ClonerParams) -> Result<AlphaWindow> {
    let p = params.p();
    if p == 0.0 {
        return Err(Error::AlphaWindowUndefined);
    }
    let q = params.q();
    let k = (1.0 + p * p) * q * q / (4.0 * p * p);
    if k >= 0.5 {
        return Ok(AlphaWindow {
            lower: 0.5,
            upper: 0.5,
            nonempty: false,
        });
    }
    let half_width = (0.25 - k * k).sqrt();
    Ok(AlphaWindow {
        lower: 0.5 - half_width,
        upper: 0.5 + half_width,
        nonempty: true,
    })
}

/// Smallest `p` for which one-side cloning broadcasts to the kept branch
/// while disentangling the other, found by bisection at the balanced input;
/// equals `√3 − 1`.
pub fn find_threshold_one_side() -> Result<f64> {
    let chi = EntangledInput::from_alpha_sq(0.5)?;
    bisect_rising_edge(0.3, 1.0, |p| {
        let params = ClonerParams::new(p)?;
        let (kept, other) = analytic_branches_one_side(&params, &chi);
        Ok(separability_verdict(&other)?.separable && !separability_verdict(&kept)?.separable)
    })
}

/// Smallest `p` for which two-side cloning disentangles the `(b_I, b_II)`
/// branch while the broadcast window stays open; equals
/// `(1 − √3 + √(2√3))/2`.
pub fn find_threshold_two_side() -> Result<f64> {
    let chi = EntangledInput::from_alpha_sq(0.5)?;
    bisect_rising_edge(0.5, 1.0, |p| {
        let params = ClonerParams::new(p)?;
        let (_, other) = analytic_branches_both_sides(&params, &chi);
        Ok(separability_verdict(&other)?.separable && alpha_window(&params)?.nonempty)
    })
}

/// Full report for one `(p, α²)` point in the chosen mode.
pub fn classify_regime(p: f64, alpha_sq: f64, mode: Mode) -> Result<RegimeReport> {
    let params = ClonerParams::new(p)?;
    let chi = EntangledInput::from_alpha_sq(alpha_sq)?;
    let (kept, other) = match mode {
        Mode::OneSide => analytic_branches_one_side(&params, &chi),
        Mode::TwoSide => analytic_branches_both_sides(&params, &chi),
    };
    let kept_verdict = separability_verdict(&kept)?;
    let other_verdict = separability_verdict(&other)?;
    let fidelity = fidelity_with_pure(&chi.two_qubit_state(), &kept)?;
    let scaling = match mode {
        Mode::OneSide => ScalingFactors {
            s_b1: 1.0,
            s_b2: scaling_factor_one_side(&params),
        },
        Mode::TwoSide => scaling_factors_two_side(&params),
    };
    Ok(RegimeReport {
        mode,
        p,
        alpha_sq,
        kept_verdict,
        other_verdict,
        fidelity,
        scaling,
        goal_met: !kept_verdict.separable && other_verdict.separable,
    })
}

/// Classify every `(p, α²)` cell, row-major with `p` outer. Cells are
/// independent; the ordering is deterministic.
pub fn sweep(mode: Mode, p_grid: &[f64], alpha_sq_grid: &[f64]) -> Result<Vec<RegimeReport>> {
    if p_grid.is_empty() || alpha_sq_grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let mut out = Vec::with_capacity(p_grid.len() * alpha_sq_grid.len());
    for &p in p_grid {
        for &alpha_sq in alpha_sq_grid {
            out.push(classify_regime(p, alpha_sq, mode)?);
        }
    }
    Ok(out)
}

/// `steps` evenly spaced points from `min` to `max` inclusive; a single
/// step collapses to `min`.
pub fn linspace(min: f64, max: f64, steps: usize) -> Vec<f64> {
    if steps <= 1 {
        return vec![min];
    }
    let delta = (max - min) / (steps - 1) as f64;
    (0..steps)
        .map(|i| if i == steps - 1 { max } else { min + delta * i as f64 })
        .collect()
}

/// Bisection on a monotone boolean predicate: `pred(lo)` must be false and
/// `pred(hi)` true; returns the crossing point.
fn bisect_rising_edge(
    mut lo: f64,
    mut hi: f64,
    pred: impl Fn(f64) -> Result<bool>,
) -> Result<f64> {
    if pred(lo)? {
        return Err(Error::BisectionBracket {
            reason: format!("predicate already true at lower bracket {lo}"),
        });
    }
    if !pred(hi)? {
        return Err(Error::BisectionBracket {
            reason: format!("predicate still false at upper bracket {hi}"),
        });
    }
    for _ in 0..tol::BISECT_MAX_ITERS {
        if hi - lo < tol::BISECT_WIDTH_TOL {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if pred(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cloner::clone_both_sides;
    use crate::numerics::ComplexMatrix;
    use crate::qstate::partial_trace;

    const ONE_SIDE_THRESHOLD: f64 = 0.7320508075688772; // √3 − 1

    fn two_side_threshold() -> f64 {
        (1.0 - 3.0f64.sqrt() + (2.0 * 3.0f64.sqrt()).sqrt()) / 2.0
    }

    #[test]
    fn mode_round_trips_through_strings() {
        assert_eq!("one-side".parse::<Mode>().unwrap(), Mode::OneSide);
        assert_eq!("two-side".parse::<Mode>().unwrap(), Mode::TwoSide);
        assert_eq!(Mode::OneSide.to_string(), "one-side");
        assert!("both".parse::<Mode>().is_err());
    }

    #[test]
    fn fidelity_is_one_for_trivial_cloner() {
        let params = ClonerParams::new(1.0).unwrap();
        for alpha_sq in [0.0, 0.3, 0.5, 1.0] {
            let chi = EntangledInput::from_alpha_sq(alpha_sq).unwrap();
            assert!((copy_fidelity(&params, &chi) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn fidelity_loses_state_dependence_for_product_inputs() {
        let params = ClonerParams::new(0.7).unwrap();
        let expected = (1.0 + 0.49f64).powi(2) / params.n_factor().powi(2);
        for alpha_sq in [0.0, 1.0] {
            let chi = EntangledInput::from_alpha_sq(alpha_sq).unwrap();
            assert!((copy_fidelity(&params, &chi) - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn fidelity_spot_value() {
        // (2.6896 − 0.064)/2.8224, hand-evaluated before the build.
        let params = ClonerParams::new(0.8).unwrap();
        let chi = EntangledInput::from_alpha_sq(0.5).unwrap();
        assert!((copy_fidelity(&params, &chi) - 0.930_272_108_843_537_4).abs() < 1e-12);
    }

    #[test]
    fn fidelity_closed_form_matches_bruteforce_expectation() {
        for p in linspace(0.0, 1.0, 11) {
            let params = ClonerParams::new(p).unwrap();
            for alpha_sq in linspace(0.0, 1.0, 11) {
                let chi = EntangledInput::from_alpha_sq(alpha_sq).unwrap();
                let out = clone_both_sides(&chi, &params).unwrap();
                let numeric =
                    fidelity_with_pure(&chi.two_qubit_state(), &out.branch_kept).unwrap();
                assert!(
                    (copy_fidelity(&params, &chi) - numeric).abs() < tol::EQUALITY_TOL,
                    "p={p} alpha_sq={alpha_sq}"
                );
            }
        }
    }

    #[test]
    fn fidelity_monotone_in_p_at_balanced_input() {
        let chi = EntangledInput::from_alpha_sq(0.5).unwrap();
        let mut last = f64::NEG_INFINITY;
        for p in linspace(0.5, 1.0, 51) {
            let f = copy_fidelity(&ClonerParams::new(p).unwrap(), &chi);
            assert!(f >= last - 1e-15, "fidelity dipped at p={p}");
            last = f;
        }
    }

    #[test]
    fn two_side_scaling_values() {
        assert!((scaling_factors_two_side(&ClonerParams::new(0.8).unwrap()).s_b1
            - 0.4 / 1.68)
            .abs()
            < 1e-15);
        assert_eq!(scaling_factors_two_side(&ClonerParams::new(1.0).unwrap()).s_b2, 0.0);
        let at_threshold =
            scaling_factors_two_side(&ClonerParams::new(two_side_threshold()).unwrap());
        assert!((at_threshold.s_b1 - 1.0 / 3.0f64.sqrt()).abs() < 1e-6);
        assert_eq!(at_threshold.s_b1, at_threshold.s_b2);
    }

    #[test]
    fn one_side_scaling_values() {
        assert!(
            (scaling_factor_one_side(&ClonerParams::new(ONE_SIDE_THRESHOLD).unwrap()) - 1.0 / 3.0)
                .abs()
                < 1e-9
        );
        assert_eq!(scaling_factor_one_side(&ClonerParams::new(1.0).unwrap()), 0.0);
        assert!(
            (scaling_factor_one_side(&ClonerParams::new(0.5).unwrap()) - 2.0 / 3.0).abs() < 1e-15
        );
    }

    #[test]
    fn one_side_product_bound_above_threshold() {
        // s_{a_I}·s_{b_II} = 2q/N stays ≤ 1/3 once the machine disentangles.
        for p in linspace(ONE_SIDE_THRESHOLD, 1.0, 51) {
            let s = scaling_factor_one_side(&ClonerParams::new(p).unwrap());
            assert!(s <= 1.0 / 3.0 + tol::EQUALITY_TOL, "p={p}, s={s}");
        }
    }

    #[test]
    fn scaling_form_fits_marginals_for_every_alpha() {
        // Fit s from the (0,0) entry of the disentangled marginal and
        // compare with 2q/N; also check the affine form entrywise.
        for p in [0.6, 0.8, 0.95] {
            let params = ClonerParams::new(p).unwrap();
            let s_expected = scaling_factors_two_side(&params).s_b1;
            for alpha_sq in [0.1, 0.3, 0.7, 0.9] {
                let chi = EntangledInput::from_alpha_sq(alpha_sq).unwrap();
                let out = clone_both_sides(&chi, &params).unwrap();
                for keep in [[0usize], [1usize]] {
                    let marginal = partial_trace(&out.branch_other, &keep).unwrap();
                    let fitted = (marginal.matrix().get(0, 0).re - 0.5) / (alpha_sq - 0.5);
                    assert!((fitted - s_expected).abs() < tol::EQUALITY_TOL, "p={p}");
                    let form = ComplexMatrix::diagonal(&[alpha_sq, 1.0 - alpha_sq])
                        .scale_real(s_expected)
                        .add(&ComplexMatrix::identity(2).scale_real((1.0 - s_expected) / 2.0))
                        .unwrap();
                    assert!(marginal.matrix().approx_eq(&form, tol::EQUALITY_TOL));
                }
            }
        }
    }

    #[test]
    fn alpha_window_open_for_trivial_cloner() {
        let w = alpha_window(&ClonerParams::new(1.0).unwrap()).unwrap();
        assert!(w.nonempty);
        assert!((w.lower - 0.0).abs() < 1e-15);
        assert!((w.upper - 1.0).abs() < 1e-15);
    }

    #[test]
    fn alpha_window_rejects_p_zero() {
        assert!(matches!(
            alpha_window(&ClonerParams::new(0.0).unwrap()).unwrap_err(),
            Error::AlphaWindowUndefined
        ));
    }

    #[test]
    fn alpha_window_empty_for_small_p() {
        let w = alpha_window(&ClonerParams::new(0.3).unwrap()).unwrap();
        assert!(!w.nonempty);
        assert!(!w.contains(0.5));
    }

    #[test]
    fn alpha_window_symmetric_and_open_at_threshold() {
        let w = alpha_window(&ClonerParams::new(two_side_threshold()).unwrap()).unwrap();
        assert!(w.nonempty);
        assert!((w.lower + w.upper - 1.0).abs() < tol::EQUALITY_TOL);
        assert!(w.lower > 0.0 && w.upper < 1.0);
    }

    #[test]
    fn alpha_window_edges_sit_on_the_ppt_boundary() {
        for p in [0.6, 0.7, 0.8, 0.9] {
            let params = ClonerParams::new(p).unwrap();
            let w = alpha_window(&params).unwrap();
            for edge in [w.lower, w.upper] {
                let chi = EntangledInput::from_alpha_sq(edge).unwrap();
                let (kept, _) = analytic_branches_both_sides(&params, &chi);
                let verdict = separability_verdict(&kept).unwrap();
                assert!(
                    verdict.min_pt_eigenvalue.abs() < 1e-8,
                    "p={p}, edge={edge}: {}",
                    verdict.min_pt_eigenvalue
                );
            }
        }
    }

    #[test]
    fn one_side_threshold_matches_closed_form() {
        let found = find_threshold_one_side().unwrap();
        assert!((found - ONE_SIDE_THRESHOLD).abs() < 1e-9, "found {found}");
    }

    #[test]
    fn two_side_threshold_matches_closed_form() {
        let found = find_threshold_two_side().unwrap();
        assert!((found - two_side_threshold()).abs() < 1e-9, "found {found}");
    }

    #[test]
    fn one_side_predicate_flips_across_threshold() {
        let below = classify_regime(0.7, 0.5, Mode::OneSide).unwrap();
        assert!(!below.goal_met);
        let above = classify_regime(0.8, 0.5, Mode::OneSide).unwrap();
        assert!(above.goal_met);
    }

    #[test]
    fn classify_regime_two_side_examples() {
        let good = classify_regime(0.8, 0.5, Mode::TwoSide).unwrap();
        assert!(good.goal_met);
        assert!(!good.kept_verdict.separable);
        assert!(good.other_verdict.separable);
        assert!((good.fidelity - 0.930_272_108_843_537_4).abs() < 1e-12);

        // Symmetric cloner still broadcasts to both branches.
        let symmetric = classify_regime(0.5, 0.5, Mode::TwoSide).unwrap();
        assert!(!symmetric.goal_met);
        assert!(!symmetric.other_verdict.separable);
    }

    #[test]
    fn product_input_never_meets_goal() {
        for mode in [Mode::OneSide, Mode::TwoSide] {
            let report = classify_regime(0.9, 0.0, mode).unwrap();
            assert!(!report.goal_met);
            assert!(report.kept_verdict.separable);
        }
    }

    #[test]
    fn classify_regime_rejects_out_of_range() {
        assert!(classify_regime(1.2, 0.5, Mode::TwoSide).is_err());
        assert!(classify_regime(0.5, -0.1, Mode::TwoSide).is_err());
    }

    #[test]
    fn sweep_single_cell_matches_classify() {
        let cell = sweep(Mode::TwoSide, &[0.8], &[0.5]).unwrap();
        assert_eq!(cell.len(), 1);
        assert_eq!(cell[0], classify_regime(0.8, 0.5, Mode::TwoSide).unwrap());
    }

    #[test]
    fn sweep_rejects_empty_grids() {
        assert!(matches!(sweep(Mode::TwoSide, &[], &[0.5]).unwrap_err(), Error::EmptyGrid));
        assert!(matches!(sweep(Mode::TwoSide, &[0.5], &[]).unwrap_err(), Error::EmptyGrid));
    }

    #[test]
    fn sweep_is_row_major_p_outer() {
        let rows = sweep(Mode::OneSide, &[0.2, 0.8], &[0.1, 0.9]).unwrap();
        let cells: Vec<(f64, f64)> = rows.iter().map(|r| (r.p, r.alpha_sq)).collect();
        assert_eq!(cells, vec![(0.2, 0.1), (0.2, 0.9), (0.8, 0.1), (0.8, 0.9)]);
    }

    #[test]
    fn sweep_goal_boundary_matches_threshold() {
        let p_grid = linspace(0.0, 1.0, 101);
        let rows = sweep(Mode::TwoSide, &p_grid, &[0.5]).unwrap();
        let first_good = rows.iter().find(|r| r.goal_met).expect("some cell succeeds");
        let threshold = find_threshold_two_side().unwrap();
        assert!((first_good.p - threshold).abs() <= 0.01 + 1e-12);
    }

    #[test]
    fn linspace_endpoints_are_exact() {
        let g = linspace(0.2, 1.0, 5);
        assert_eq!(g.len(), 5);
        assert_eq!(g[0], 0.2);
        assert_eq!(g[4], 1.0);
        assert_eq!(linspace(0.3, 0.9, 1), vec![0.3]);
    }
}
