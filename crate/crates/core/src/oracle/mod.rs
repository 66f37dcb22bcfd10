//! Finite-difference boundary-value solver for the axisymmetric equations.
//!
//! The oracle shares no evaluation code with [`crate::closedform`]: it
//! discretizes the governing equations directly on a cell-centered grid.
//! Unknowns per cell are `u_r, P_rr, P_thth, P_rth, P_thr`. At the axis,
//! ghost values follow from parity (`u_r` odd, the `P` components even),
//! which is the discrete form of boundedness at the center. One ghost cell
//! outside `r = R` closes the system:
//!
//! * `u_r`, `P_thth`, `P_rth`: quadratic interpolation to the face equals the
//!   prescribed value (`U0`, `U0/R`, `0`);
//! * `P_rr`, `P_thr`: vanishing third difference (no boundary condition).
//!
//! Interior rows: radial force balance, the two normal micro-balances and the
//! two shear micro-balances, all with second-order central differences.

mod banded;
mod residuals;

pub use banded::{BandLu, BandMatrix};
pub use residuals::{residuals, EquationNorm, ResidualReport, StencilOrder, EQUATION_NAMES};

use rayon::prelude::*;

use crate::closedform::{ClosedForm, ProblemSetup};
use crate::error::{Error, Result};
use crate::material::FullParams;
use crate::scalar::Real;

pub const MIN_CELLS: usize = 16;

/// Uniform cell-centered grid, `r_i = (i + 1/2) h`, `h = R / n`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialGrid<T> {
    n_cells: usize,
    radius: T,
    centers: Vec<T>,
}

impl<T: Real> RadialGrid<T> {
    pub fn new(n_cells: usize, radius: T) -> Result<Self> {
        if n_cells == 0 || !(radius > T::zero() && radius.is_finite()) {
            return Err(Error::Precondition(format!("invalid grid: {n_cells} cells, radius {radius}")));
        }
        let h = radius / T::from_usize_lossy(n_cells);
        let half = T::lit(0.5);
        let centers = (0..n_cells).map(|i| (T::from_usize_lossy(i) + half) * h).collect();
        Ok(Self { n_cells, radius, centers })
    }

    pub fn n_cells(&self) -> usize {
        self.n_cells
    }

    pub fn radius(&self) -> T {
        self.radius
    }

    pub fn spacing(&self) -> T {
        self.radius / T::from_usize_lossy(self.n_cells)
    }

    pub fn centers(&self) -> &[T] {
        &self.centers
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    U,
    Prr,
    Pthth,
    Prth,
    Pthr,
}

impl Field {
    pub const ALL: [Field; 5] = [Field::U, Field::Prr, Field::Pthth, Field::Prth, Field::Pthr];

    fn index(self) -> usize {
        self as usize
    }

    /// Reflection sign across the axis.
    fn parity(self) -> i8 {
        if self == Field::U {
            -1
        } else {
            1
        }
    }
}

/// Discrete fields at the cell centers of a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSolution<T> {
    pub grid: RadialGrid<T>,
    pub u_r: Vec<T>,
    pub p_rr: Vec<T>,
    pub p_thth: Vec<T>,
    pub p_rth: Vec<T>,
    pub p_thr: Vec<T>,
    /// Pivot-ratio condition estimate of the solve, absent for sampled fields.
    pub condition: Option<f64>,
}

impl<T: Real> GridSolution<T> {
    /// Samples the closed form at the cell centers.
    pub fn from_closed_form(cf: &ClosedForm<T>, grid: RadialGrid<T>) -> Result<Self> {
        let n = grid.n_cells();
        let mut out = Self::zeros(grid);
        for i in 0..n {
            let r = out.grid.centers[i];
            out.u_r[i] = cf.u_r(r)?;
            let (prr, ptt, _) = cf.micro_distortion(r)?;
            out.p_rr[i] = prr;
            out.p_thth[i] = ptt;
        }
        Ok(out)
    }

    pub fn zeros(grid: RadialGrid<T>) -> Self {
        let z = vec![T::zero(); grid.n_cells()];
        Self {
            u_r: z.clone(),
            p_rr: z.clone(),
            p_thth: z.clone(),
            p_rth: z.clone(),
            p_thr: z,
            grid,
            condition: None,
        }
    }

    pub fn field(&self, f: Field) -> &[T] {
        match f {
            Field::U => &self.u_r,
            Field::Prr => &self.p_rr,
            Field::Pthth => &self.p_thth,
            Field::Prth => &self.p_rth,
            Field::Pthr => &self.p_thr,
        }
    }

    pub fn field_mut(&mut self, f: Field) -> &mut Vec<T> {
        match f {
            Field::U => &mut self.u_r,
            Field::Prr => &mut self.p_rr,
            Field::Pthth => &mut self.p_thth,
            Field::Prth => &mut self.p_rth,
            Field::Pthr => &mut self.p_thr,
        }
    }

    pub fn check_lengths(&self) -> Result<()> {
        let n = self.grid.n_cells();
        for (name, f) in [("u_r", Field::U), ("P_rr", Field::Prr), ("P_thth", Field::Pthth), ("P_rth", Field::Prth), ("P_thr", Field::Pthr)] {
            let len = self.field(f).len();
            if len != n {
                return Err(Error::GridLength {
                    field: name,
                    expected: n,
                    found: len,
                });
            }
        }
        Ok(())
    }

    /// Multiplies one field by `factor`.
    pub fn scale_field(&mut self, f: Field, factor: T) {
        for v in self.field_mut(f) {
            *v = *v * factor;
        }
    }

    /// Value at `r = R` by quadratic extrapolation from the last three centers.
    pub fn boundary_value(&self, f: Field) -> T {
        let v = self.field(f);
        let n = v.len();
        (T::lit(15.0) * v[n - 1] - T::lit(10.0) * v[n - 2] + T::lit(3.0) * v[n - 3]) / T::lit(8.0)
    }
}

const PER_CELL: usize = 5;
const KL: usize = 15;
const KU: usize = 9;

struct Assembler<T> {
    m: BandMatrix<T>,
    n: usize,
}

impl<T: Real> Assembler<T> {
    /// Adds `v` times unknown `f` of `cell` (which may be `-1`, the mirror of cell 0).
    fn add(&mut self, row: usize, cell: isize, f: Field, v: T) {
        let (cell, v) = if cell < 0 {
            ((-1 - cell) as usize, if f.parity() < 0 { -v } else { v })
        } else {
            (cell as usize, v)
        };
        debug_assert!(cell <= self.n);
        self.m.add(row, PER_CELL * cell + f.index(), v);
    }
}

/// Solves the discretized boundary-value problem on `n_cells` cells.
pub fn solve_bvp<T: Real>(params: &FullParams<T>, setup: &ProblemSetup<T>, n_cells: usize) -> Result<GridSolution<T>> {
    if n_cells < MIN_CELLS {
        return Err(Error::Precondition(format!("need at least {MIN_CELLS} cells, got {n_cells}")));
    }
    params.validate().into_result()?;
    if !(params.l_c() > T::zero()) {
        return Err(Error::Precondition("the finite-difference oracle needs L_c > 0".into()));
    }
    let grid = RadialGrid::new(n_cells, setup.radius)?;
    let n = n_cells;
    let h = grid.spacing();
    let dim = PER_CELL * (n + 1);
    let mut asm = Assembler {
        m: BandMatrix::zeros(dim, KL, KU),
        n,
    };
    let mut rhs = vec![T::zero(); dim];

    let (mu_e, lambda_e, mu_m, lambda_m, mu_c) =
        (params.mu_e(), params.lambda_e(), params.mu_micro(), params.lambda_micro(), params.mu_c());
    let k = params.mu_macro() * params.l_c() * params.l_c();
    let two = T::lit(2.0);
    let c = two * mu_e + lambda_e;
    let (d1w, d2w) = (T::one() / (two * h), T::one() / (h * h));
    use Field::*;

    for i in 0..n {
        let r = grid.centers[i];
        let ic = i as isize;
        let row_of = |f: Field| PER_CELL * i + f.index();
        // coefficient of f, f', f'' at this cell
        let put = |asm: &mut Assembler<T>, row: usize, f: Field, c0: T, c1: T, c2: T| {
            asm.add(row, ic - 1, f, -c1 * d1w + c2 * d2w);
            asm.add(row, ic, f, c0 - two * c2 * d2w);
            asm.add(row, ic + 1, f, c1 * d1w + c2 * d2w);
        };
        let zero = T::zero();
        let (ir, ir2) = (T::one() / r, T::one() / (r * r));

        // radial force balance
        let row = row_of(U);
        put(&mut asm, row, U, -c * ir2, c * ir, c);
        put(&mut asm, row, Prr, -two * mu_e * ir, -c, zero);
        put(&mut asm, row, Pthth, two * mu_e * ir, -c + two * mu_e, zero);

        // radial micro-balance
        let row = row_of(Prr);
        put(&mut asm, row, U, lambda_e * ir, c, zero);
        put(&mut asm, row, Prr, -c - two * mu_m - lambda_m - k * ir2, zero, zero);
        put(&mut asm, row, Pthth, -lambda_e - lambda_m + k * ir2, k * ir, zero);

        // hoop micro-balance
        let row = row_of(Pthth);
        put(&mut asm, row, U, c * ir, lambda_e, zero);
        put(&mut asm, row, Prr, -lambda_e - lambda_m + k * ir2, -k * ir, zero);
        put(&mut asm, row, Pthth, -c - two * mu_m - lambda_m - k * ir2, k * ir, k);

        // shear micro-balances
        let base = mu_e + mu_m + k * ir2;
        let row = row_of(Prth);
        put(&mut asm, row, Prth, base + mu_c, zero, zero);
        put(&mut asm, row, Pthr, base - mu_c, k * ir, zero);
        let row = row_of(Pthr);
        put(&mut asm, row, Prth, base - mu_c, -k * ir, zero);
        put(&mut asm, row, Pthr, base + mu_c, -k * ir, -k);
    }

    let g = n as isize;
    let (eighth, three_q, three_e) = (T::lit(-0.125), T::lit(0.75), T::lit(0.375));
    for (f, value) in [(U, setup.u0), (Pthth, setup.u0 / setup.radius), (Prth, T::zero())] {
        let row = PER_CELL * n + f.index();
        asm.add(row, g - 2, f, eighth);
        asm.add(row, g - 1, f, three_q);
        asm.add(row, g, f, three_e);
        rhs[row] = value;
    }
    let three = T::lit(3.0);
    for f in [Prr, Pthr] {
        let row = PER_CELL * n + f.index();
        asm.add(row, g, f, T::one());
        asm.add(row, g - 1, f, -three);
        asm.add(row, g - 2, f, three);
        asm.add(row, g - 3, f, -T::one());
    }

    let lu = asm.m.factorize()?;
    let x = lu.solve(&rhs);
    let mut sol = GridSolution::zeros(grid);
    sol.condition = Some(lu.condition_estimate());
    for f in Field::ALL {
        let col = sol.field_mut(f);
        for (i, v) in col.iter_mut().enumerate() {
            *v = x[PER_CELL * i + f.index()];
        }
    }
    Ok(sol)
}

/// Oracle error against the closed form at one resolution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow<T> {
    pub n_cells: usize,
    /// `max |fd - closed form| / max |closed form|` for `u_r`, `P_rr`, `P_thth`.
    pub err_u: T,
    pub err_prr: T,
    pub err_pthth: T,
    /// `max(|P_rth|, |P_thr|) / max |P_thth|` of the oracle solution.
    pub shear: T,
    /// Observed orders relative to the previous row.
    pub order_u: Option<T>,
    pub order_prr: Option<T>,
    pub order_pthth: Option<T>,
    pub condition: f64,
}

fn max_rel_err<T: Real>(fd: &[T], exact: &[T]) -> T {
    let scale = exact.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    let err = fd.iter().zip(exact).fold(T::zero(), |m, (a, b)| m.max((*a - *b).abs()));
    if scale > T::zero() {
        err / scale
    } else {
        err
    }
}

/// Solves at every resolution in `n_list` (ascending, each `>= 32`) and
/// compares with the closed form. Solves run in parallel.
pub fn convergence_study<T: Real>(params: &FullParams<T>, setup: &ProblemSetup<T>, n_list: &[usize]) -> Result<Vec<ConvergenceRow<T>>> {
    if n_list.is_empty() || n_list.iter().any(|&n| n < 32) || n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Precondition(format!(
            "resolution list must be ascending with every entry >= 32, got {n_list:?}"
        )));
    }
    let cf = ClosedForm::new(*params, *setup)?;
    let mut rows = n_list
        .par_iter()
        .map(|&n| {
            let fd = solve_bvp(params, setup, n)?;
            let exact = GridSolution::from_closed_form(&cf, fd.grid.clone())?;
            let pmax = fd.p_thth.iter().fold(T::zero(), |m, v| m.max(v.abs()));
            let smax = fd.p_rth.iter().chain(&fd.p_thr).fold(T::zero(), |m, v| m.max(v.abs()));
            Ok(ConvergenceRow {
                n_cells: n,
                err_u: max_rel_err(&fd.u_r, &exact.u_r),
                err_prr: max_rel_err(&fd.p_rr, &exact.p_rr),
                err_pthth: max_rel_err(&fd.p_thth, &exact.p_thth),
                shear: if pmax > T::zero() { smax / pmax } else { smax },
                order_u: None,
                order_prr: None,
                order_pthth: None,
                condition: fd.condition.unwrap_or(f64::NAN),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    for k in 1..rows.len() {
        let ratio = (T::from_usize_lossy(rows[k].n_cells) / T::from_usize_lossy(rows[k - 1].n_cells)).ln();
        let order = |prev: T, cur: T| (prev / cur).ln() / ratio;
        let prev = rows[k - 1];
        let row = &mut rows[k];
        row.order_u = Some(order(prev.err_u, row.err_u));
        row.order_prr = Some(order(prev.err_prr, row.err_prr));
        row.order_pthth = Some(order(prev.err_pthth, row.err_pthth));
    }
    Ok(rows)
}
