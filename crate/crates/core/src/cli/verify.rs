//! The consistency suite behind `asymclone verify`: every closed form in
//! the crate is checked against the brute-force register simulation on a
//! dense `(p, α²)` grid and against the exact algebraic identities.

use crate::analysis::{copy_fidelity, linspace, scaling_factor_one_side, scaling_factors_two_side};
use crate::cloner::{
    analytic_branches_both_sides, analytic_branches_one_side, clone_both_sides, clone_one_side,
    cloner_isometry, depolarizing_probs, single_qubit_outputs, ClonerParams,
};
use crate::error::Result;
use crate::numerics::ComplexMatrix;
use crate::qstate::{
    bell_weights, density_from_pure, fidelity_with_pure, partial_trace, EntangledInput, PureState,
};
use crate::tol;

/// One named check with its worst observed residual.
#[derive(Debug, Clone)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl CheckOutcome {
    fn at_equality_tol(name: &'static str, max_residual: f64) -> Self {
        Self {
            name,
            max_residual,
            tolerance: tol::EQUALITY_TOL,
            passed: max_residual <= tol::EQUALITY_TOL,
        }
    }
}

const P_POINTS: usize = 101;
const ALPHA_POINTS: usize = 21;

/// Run every check and report one outcome per check.
pub fn run_all() -> Result<Vec<CheckOutcome>> {
    let p_grid = linspace(0.0, 1.0, P_POINTS);
    let alpha_grid = linspace(0.0, 1.0, ALPHA_POINTS);

    let mut isometry = 0.0f64;
    let mut no_cloning = 0.0f64;
    for &p in &p_grid {
        let params = ClonerParams::new(p)?;
        let v = cloner_isometry(&params);
        let gram = v.dagger().matmul(&v)?;
        isometry = isometry.max(gram.max_abs_diff(&ComplexMatrix::identity(2)));
        no_cloning = no_cloning.max(params.no_cloning_residual().abs());
    }

    let shrink = single_qubit_shrink_residual(&p_grid)?;
    let grid = grid_residuals(&p_grid, &alpha_grid)?;
    let bell = bell_weight_residual(&p_grid)?;

    Ok(vec![
        CheckOutcome::at_equality_tol("isometry V†V = I over p grid", isometry),
        CheckOutcome::at_equality_tol("no-cloning identity residual over p grid", no_cloning),
        CheckOutcome::at_equality_tol("single-qubit copies match shrink form", shrink),
        CheckOutcome::at_equality_tol(
            "one-side branches: closed form vs register simulation",
            grid.one_side_branches,
        ),
        CheckOutcome::at_equality_tol(
            "two-side branches: closed form vs register simulation",
            grid.two_side_branches,
        ),
        CheckOutcome::at_equality_tol(
            "copy fidelity: closed form vs overlap with kept branch",
            grid.fidelity,
        ),
        CheckOutcome::at_equality_tol(
            "disentangled marginals match state-independent scaling form",
            grid.scaling_form,
        ),
        CheckOutcome::at_equality_tol(
            "branch marginals reproduce the reduction factors",
            grid.marginal_shrink,
        ),
        CheckOutcome::at_equality_tol(
            "Bell weights at balanced input match closed forms",
            bell,
        ),
    ])
}

struct GridResiduals {
    one_side_branches: f64,
    two_side_branches: f64,
    fidelity: f64,
    scaling_form: f64,
    marginal_shrink: f64,
}

/// One pass over the full grid feeding the four oracle-equivalence checks.
fn grid_residuals(p_grid: &[f64], alpha_grid: &[f64]) -> Result<GridResiduals> {
    let mut out = GridResiduals {
        one_side_branches: 0.0,
        two_side_branches: 0.0,
        fidelity: 0.0,
        scaling_form: 0.0,
        marginal_shrink: 0.0,
    };
    for &p in p_grid {
        let params = ClonerParams::new(p)?;
        let s_two = scaling_factors_two_side(&params).s_b1;
        let s_one = scaling_factor_one_side(&params);
        let eta_a = params.eta_a();
        for &alpha_sq in alpha_grid {
            let chi = EntangledInput::from_alpha_sq(alpha_sq)?;

            let one = clone_one_side(&chi, &params)?;
            let (kept1, other1) = analytic_branches_one_side(&params, &chi);
            out.one_side_branches = out
                .one_side_branches
                .max(one.branch_kept.matrix().max_abs_diff(kept1.matrix()))
                .max(one.branch_other.matrix().max_abs_diff(other1.matrix()));

            let two = clone_both_sides(&chi, &params)?;
            let (kept2, other2) = analytic_branches_both_sides(&params, &chi);
            out.two_side_branches = out
                .two_side_branches
                .max(two.branch_kept.matrix().max_abs_diff(kept2.matrix()))
                .max(two.branch_other.matrix().max_abs_diff(other2.matrix()));

            let overlap = fidelity_with_pure(&chi.two_qubit_state(), &two.branch_kept)?;
            out.fidelity = out
                .fidelity
                .max((copy_fidelity(&params, &chi) - overlap).abs());

            // Both marginals of the two-side disentangled branch shrink by
            // the same state-independent s; the one-side branch keeps the
            // untouched marginal (s = 1) and shrinks the cloned one.
            let input_marginal = ComplexMatrix::diagonal(&[alpha_sq, 1.0 - alpha_sq]);
            for keep in [[0usize], [1usize]] {
                let marginal = partial_trace(&two.branch_other, &keep)?;
                out.scaling_form = out
                    .scaling_form
                    .max(marginal.matrix().max_abs_diff(&shrink_form(s_two, &input_marginal)));
            }
            let untouched = partial_trace(&one.branch_other, &[0])?;
            out.scaling_form = out
                .scaling_form
                .max(untouched.matrix().max_abs_diff(&input_marginal));
            let cloned = partial_trace(&one.branch_other, &[1])?;
            out.scaling_form = out
                .scaling_form
                .max(cloned.matrix().max_abs_diff(&shrink_form(s_one, &input_marginal)));

            // Kept-branch marginals: the uncloned qubit passes through,
            // every cloned qubit shrinks by eta_a.
            out.marginal_shrink = out
                .marginal_shrink
                .max(
                    partial_trace(&one.branch_kept, &[0])?
                        .matrix()
                        .max_abs_diff(&input_marginal),
                )
                .max(
                    partial_trace(&one.branch_kept, &[1])?
                        .matrix()
                        .max_abs_diff(&shrink_form(eta_a, &input_marginal)),
                );
            for keep in [[0usize], [1usize]] {
                let marginal = partial_trace(&two.branch_kept, &keep)?;
                out.marginal_shrink = out
                    .marginal_shrink
                    .max(marginal.matrix().max_abs_diff(&shrink_form(eta_a, &input_marginal)));
            }
        }
    }
    Ok(out)
}

fn shrink_form(s: f64, input_marginal: &ComplexMatrix) -> ComplexMatrix {
    input_marginal
        .scale_real(s)
        .add(&ComplexMatrix::identity(2).scale_real((1.0 - s) / 2.0))
        .expect("2x2 shapes")
}

fn single_qubit_shrink_residual(p_grid: &[f64]) -> Result<f64> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let states = [
        PureState::from_real(1, &[1.0, 0.0])?,
        PureState::from_real(1, &[h, h])?,
        PureState::from_real(1, &[0.6, 0.8])?,
    ];
    let mut worst = 0.0f64;
    for &p in p_grid {
        let params = ClonerParams::new(p)?;
        for phi in &states {
            let projector = density_from_pure(phi)?;
            let (rho_a, rho_b) = single_qubit_outputs(&params, phi)?;
            for (rho, eta) in [(&rho_a, params.eta_a()), (&rho_b, params.eta_b())] {
                let form = projector
                    .matrix()
                    .scale_real(eta)
                    .add(&ComplexMatrix::identity(2).scale_real((1.0 - eta) / 2.0))?;
                worst = worst.max(rho.matrix().max_abs_diff(&form));
            }
        }
    }
    Ok(worst)
}

fn bell_weight_residual(p_grid: &[f64]) -> Result<f64> {
    let chi = EntangledInput::from_alpha_sq(0.5)?;
    let mut worst = 0.0f64;
    for &p in p_grid {
        let params = ClonerParams::new(p)?;
        let two_n = 2.0 * params.n_factor();
        let (prob, prob_prime) = depolarizing_probs(&params);
        let (kept, other) = analytic_branches_one_side(&params, &chi);

        let w_kept = bell_weights(&kept)?;
        let kept_expected = [
            (1.0 + p) * (1.0 + p) / two_n,
            (1.0 - p) * (1.0 - p) / two_n,
            (1.0 - p) * (1.0 - p) / two_n,
            (1.0 - p) * (1.0 - p) / two_n,
        ];
        let w_other = bell_weights(&other)?;
        let other_expected = [
            (2.0 - p) * (2.0 - p) / two_n,
            p * p / two_n,
            p * p / two_n,
            p * p / two_n,
        ];
        for i in 0..4 {
            worst = worst.max((w_kept[i] - kept_expected[i]).abs());
            worst = worst.max((w_other[i] - other_expected[i]).abs());
        }
        for &minor in &w_kept[1..] {
            worst = worst.max((minor - prob / 3.0).abs());
        }
        for &minor in &w_other[1..] {
            worst = worst.max((minor - prob_prime / 3.0).abs());
        }
    }
    Ok(worst)
}
