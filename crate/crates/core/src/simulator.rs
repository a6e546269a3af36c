//! Theta-method time stepping for the semi-discrete heat equation
//! `w' = B_h w`, with per-step positivity and norm monitoring.
//!
//! One step solves `(I - theta tau B_h) w_new = (I + (1 - theta) tau B_h) w`
//! with a tridiagonal factorization computed once per run. `A_m` is never
//! formed, so the stepping path is independent of [`crate::matrix`]'s
//! dense builders.

use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::format::{csv_line, g15};
use crate::matrix::GridConfig;
use crate::scalar::Scalar;
use crate::tridiag::{TridiagLu, TridiagMatrix};

#[derive(Debug, Clone, PartialEq)]
pub enum InitialCondition<T> {
    /// `w_i = 1` where `i h >= a`, else 0.
    StepProfile(T),
    Custom(Vec<T>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig<T> {
    pub grid: GridConfig<T>,
    pub theta: T,
    pub tau: T,
    pub steps: usize,
    pub initial: InitialCondition<T>,
}

impl<T: Scalar> SimConfig<T> {
    /// Crank-Nicolson (`theta = 1/2`).
    pub fn crank_nicolson(grid: GridConfig<T>, tau: T, steps: usize, initial: InitialCondition<T>) -> Self {
        SimConfig { grid, theta: T::one() / T::int(2), tau, steps, initial }
    }

    pub fn s(&self) -> T {
        self.grid.cfl(&self.tau)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.theta >= T::zero() && self.theta <= T::one()) {
            return Err(Error::Domain(format!("theta must lie in [0, 1], got {:?}", self.theta)));
        }
        if !(self.tau > T::zero()) || !self.tau.is_finite_value() {
            return Err(Error::Domain(format!("tau must be finite and > 0, got {:?}", self.tau)));
        }
        if self.steps == 0 {
            return Err(Error::Domain("steps must be >= 1".into()));
        }
        match &self.initial {
            InitialCondition::StepProfile(a) => {
                if !(*a > T::zero() && *a < T::one()) {
                    return Err(Error::Domain(format!("step position must lie in (0, 1), got {a:?}")));
                }
            }
            InitialCondition::Custom(v) => {
                if v.len() != self.grid.m() {
                    return Err(Error::Dimension { expected: self.grid.m(), got: v.len() });
                }
            }
        }
        Ok(())
    }

    pub fn initial_state(&self) -> Result<Vec<T>> {
        match &self.initial {
            InitialCondition::StepProfile(a) => make_step_profile(&self.grid, a.clone()),
            InitialCondition::Custom(v) => Ok(v.clone()),
        }
    }
}

/// Indicator of `x >= a` on the interior nodes.
pub fn make_step_profile<T: Scalar>(grid: &GridConfig<T>, a: T) -> Result<Vec<T>> {
    if !(a > T::zero() && a < T::one()) {
        return Err(Error::Domain(format!("step position must lie in (0, 1), got {a:?}")));
    }
    Ok((1..=grid.m())
        .map(|i| if grid.node(i) >= a { T::one() } else { T::zero() })
        .collect())
}

/// Factored theta-method step for a fixed grid, `theta` and `tau`.
#[derive(Debug, Clone)]
pub struct ThetaStepper<T> {
    implicit: TridiagLu<T>,
    explicit: TridiagMatrix<T>,
}

impl<T: Scalar> ThetaStepper<T> {
    pub fn new(grid: &GridConfig<T>, theta: T, tau: T) -> Result<Self> {
        let s = grid.cfl(&tau);
        let two = T::int(2);
        let imp = theta.clone() * s.clone();
        let exp = (T::one() - theta) * s;
        let implicit = TridiagMatrix::new(grid.m(), -imp.clone(), T::one() + two.clone() * imp.clone(), -imp);
        let explicit = TridiagMatrix::new(grid.m(), exp.clone(), T::one() - two * exp.clone(), exp);
        Ok(ThetaStepper { implicit: implicit.factor()?, explicit })
    }

    pub fn apply(&self, w: &[T]) -> Result<Vec<T>> {
        let mut next = self.explicit.mul_vec(w)?;
        self.implicit.solve_in_place(&mut next)?;
        Ok(next)
    }
}

/// One step from `w`.
pub fn step<T: Scalar>(config: &SimConfig<T>, w: &[T]) -> Result<Vec<T>> {
    ThetaStepper::new(&config.grid, config.theta.clone(), config.tau.clone())?.apply(w)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimTrace<T> {
    pub times: Vec<T>,
    /// `states[0]` is the initial vector.
    pub states: Vec<Vec<T>>,
    pub min_entries: Vec<T>,
    pub norms: Vec<T>,
    /// First step with a negative component, when the initial vector is
    /// nonnegative.
    pub positivity_violation: Option<usize>,
    /// First step whose max-norm exceeds the previous one.
    pub norm_violation: Option<usize>,
}

impl<T: Scalar> SimTrace<T> {
    pub fn last_state(&self) -> &[T] {
        self.states.last().map(Vec::as_slice).unwrap_or(&[])
    }
}

fn min_and_norm<T: Scalar>(w: &[T]) -> (T, T) {
    let min = w.iter().cloned().reduce(T::min_of).unwrap_or_else(T::zero);
    let norm = w.iter().fold(T::zero(), |acc, v| T::max_of(acc, v.abs_val()));
    (min, norm)
}

/// `1e-12` in `T`.
fn slack<T: Scalar>() -> T {
    T::one() / T::int(1_000_000_000_000)
}

pub fn run<T: Scalar>(config: &SimConfig<T>) -> Result<SimTrace<T>> {
    config.validate()?;
    let stepper = ThetaStepper::new(&config.grid, config.theta.clone(), config.tau.clone())?;
    let w0 = config.initial_state()?;
    let (min0, norm0) = min_and_norm(&w0);
    let watch_sign = min0 >= T::zero();
    let floor = -(slack::<T>() * norm0.clone());
    let growth = T::one() + slack::<T>();

    let mut trace = SimTrace {
        times: vec![T::zero()],
        states: vec![w0],
        min_entries: vec![min0],
        norms: vec![norm0],
        positivity_violation: None,
        norm_violation: None,
    };
    let mut t = T::zero();
    for n in 1..=config.steps {
        let next = stepper.apply(trace.last_state())?;
        let (min, norm) = min_and_norm(&next);
        if watch_sign && trace.positivity_violation.is_none() && min < floor {
            trace.positivity_violation = Some(n);
        }
        let prev = trace.norms[n - 1].clone();
        if trace.norm_violation.is_none() && norm > prev * growth.clone() {
            trace.norm_violation = Some(n);
        }
        t = t + config.tau.clone();
        trace.times.push(t.clone());
        trace.states.push(next);
        trace.min_entries.push(min);
        trace.norms.push(norm);
    }
    Ok(trace)
}

/// Header `t,w_1,...,w_m,min_entry,inf_norm`.
pub fn trace_header(m: usize) -> String {
    let mut cols = vec!["t".to_string()];
    cols.extend((1..=m).map(|i| format!("w_{i}")));
    cols.push("min_entry".into());
    cols.push("inf_norm".into());
    csv_line(cols)
}

pub fn write_trace_csv<T: Scalar, W: Write>(out: &mut W, trace: &SimTrace<T>) -> io::Result<()> {
    let m = trace.states.first().map_or(0, Vec::len);
    writeln!(out, "{}", trace_header(m))?;
    for n in 0..trace.states.len() {
        let mut cols = vec![g15(trace.times[n].as_f64())];
        cols.extend(trace.states[n].iter().map(|v| g15(v.as_f64())));
        cols.push(g15(trace.min_entries[n].as_f64()));
        cols.push(g15(trace.norms[n].as_f64()));
        writeln!(out, "{}", csv_line(cols))?;
    }
    Ok(())
}
