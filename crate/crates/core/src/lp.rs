//! Exact rational linear programming.
//!
//! Dense two-phase simplex with Bland's rule. Problems stay small here (at
//! most a few thousand rows), so there is no sparse machinery; instead the
//! kernel is generic over the scalar and first runs on an `i128` fraction
//! type, falling back to `BigRational` only when an intermediate value
//! overflows. Both scalars compare exactly, so the pivot sequence — and
//! therefore the reported vertex — is identical on either path.

use crate::ratio::Ratio;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Ratio>,
    pub relation: Relation,
    pub rhs: Ratio,
}

/// Inclusive variable bounds; `None` means unbounded on that side.
pub type Bounds = (Option<Ratio>, Option<Ratio>);

#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub sense: Sense,
    pub objective: Vec<Ratio>,
    pub constraints: Vec<Constraint>,
    pub bounds: Vec<Bounds>,
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub point: Vec<Ratio>,
    pub value: Ratio,
    /// True when the optimal *point* is provably unique: every nonbasic
    /// column that can change the point has strictly positive reduced cost.
    /// False is inconclusive.
    pub unique: bool,
    /// Simplex multipliers per constraint, oriented for the minimization
    /// form (negated for maximization), recovered from the final basis. For
    /// programs whose only bounds are `x ≥ 0` these are dual-feasible and
    /// satisfy Σ π_i b_i = value.
    pub row_duals: Vec<Ratio>,
}

/// Multipliers aggregating the constraints into an impossible inequality;
/// see [`FarkasCertificate::verify`].
#[derive(Clone, Debug)]
pub struct FarkasCertificate {
    pub row_multipliers: Vec<Ratio>,
}

#[derive(Clone, Debug)]
pub enum LpOutcome {
    Optimal(Solution),
    Infeasible(FarkasCertificate),
    Unbounded,
}

#[derive(Clone, Debug, thiserror::Error)]
pub enum LpError {
    #[error("constraint {index} has {got} coefficients, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("bounds for variable {var} are empty: {lo} > {hi}")]
    EmptyBounds { var: usize, lo: Ratio, hi: Ratio },
    #[error("tableau would need {cells} cells (limit {limit})")]
    TooLarge { cells: usize, limit: usize },
    #[error("lexicographic minimization requires a feasible bounded program at every stage")]
    LexInfeasible,
}

const MAX_TABLEAU_CELLS: usize = 64_000_000;

impl LinearProgram {
    pub fn minimize(objective: Vec<Ratio>) -> Self {
        let num_vars = objective.len();
        LinearProgram {
            num_vars,
            sense: Sense::Minimize,
            objective,
            constraints: Vec::new(),
            bounds: vec![(None, None); num_vars],
        }
    }

    pub fn maximize(objective: Vec<Ratio>) -> Self {
        let mut lp = Self::minimize(objective);
        lp.sense = Sense::Maximize;
        lp
    }

    /// Feasibility program (zero objective) in `num_vars` variables.
    pub fn feasibility(num_vars: usize) -> Self {
        Self::minimize(vec![Ratio::zero(); num_vars])
    }

    pub fn push(&mut self, coeffs: Vec<Ratio>, relation: Relation, rhs: Ratio) {
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }

    pub fn set_lower_bound(&mut self, var: usize, lo: Ratio) {
        self.bounds[var].0 = Some(lo);
    }

    pub fn set_upper_bound(&mut self, var: usize, hi: Ratio) {
        self.bounds[var].1 = Some(hi);
    }

    pub fn nonnegative(mut self) -> Self {
        for b in &mut self.bounds {
            b.0 = Some(Ratio::zero());
        }
        self
    }

    pub fn solve(&self) -> Result<LpOutcome, LpError> {
        let prepared = prepare(self)?;
        let m = prepared.rows.len();
        let cells = (m + 2) * (prepared.kernel_cols + 2 * m + 2);
        if cells > MAX_TABLEAU_CELLS {
            return Err(LpError::TooLarge {
                cells,
                limit: MAX_TABLEAU_CELLS,
            });
        }
        if let Some(result) = kernel::run_kernel::<kernel::Frac128>(&prepared) {
            return Ok(finish(self, &prepared, result));
        }
        let result =
            kernel::run_kernel::<Ratio>(&prepared).expect("rational kernel cannot overflow");
        Ok(finish(self, &prepared, result))
    }
}

/// Minimizes the stacked objectives in order, fixing each achieved optimum
/// as an equality before moving to the next. Returns the final point.
pub fn lex_minimize(
    objectives: &[Vec<Ratio>],
    lp: &LinearProgram,
) -> Result<Vec<Ratio>, LpError> {
    let mut work = lp.clone();
    work.sense = Sense::Minimize;
    let mut point = None;
    for objective in objectives {
        work.objective = objective.clone();
        match work.solve()? {
            LpOutcome::Optimal(solution) => {
                work.push(objective.clone(), Relation::Eq, solution.value.clone());
                point = Some(solution.point);
            }
            _ => return Err(LpError::LexInfeasible),
        }
    }
    point.ok_or(LpError::LexInfeasible)
}

impl FarkasCertificate {
    /// Checks that the multipliers aggregate the constraints into an
    /// inequality no point within the variable bounds can satisfy.
    ///
    /// Orientation: multipliers must be ≥ 0 on `Ge` rows, ≤ 0 on `Le` rows
    /// and free on `Eq` rows, so that Σ λ_i (a_i·x) ≥ Σ λ_i b_i holds for
    /// every feasible x; the certificate is valid when the supremum of the
    /// aggregated left side over the bound box is still smaller than the
    /// right side.
    pub fn verify(&self, lp: &LinearProgram) -> bool {
        if self.row_multipliers.len() != lp.constraints.len() {
            return false;
        }
        let mut aggregated = vec![Ratio::zero(); lp.num_vars];
        let mut rhs = Ratio::zero();
        for (lambda, c) in self.row_multipliers.iter().zip(&lp.constraints) {
            match c.relation {
                Relation::Ge if lambda.is_negative() => return false,
                Relation::Le if lambda.is_positive() => return false,
                _ => {}
            }
            for (g, a) in aggregated.iter_mut().zip(&c.coeffs) {
                *g += lambda * a;
            }
            rhs += lambda * &c.rhs;
        }
        // Supremum of aggregated·x over the box; infinite coefficients in an
        // unbounded direction invalidate the certificate.
        let mut sup = Ratio::zero();
        for (g, (lo, hi)) in aggregated.iter().zip(&lp.bounds) {
            if g.is_zero() {
                continue;
            }
            let best = if g.is_positive() { hi } else { lo };
            match best {
                Some(b) => sup += g * b,
                None => return false,
            }
        }
        sup < rhs
    }
}

// ---------------------------------------------------------------------------
// Problem preparation: bound substitution and standard form layout.
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
enum VarMap {
    /// x = lo + y, y ≥ 0.
    Shifted { col: usize, lo: Ratio },
    /// x = hi − y, y ≥ 0.
    Mirrored { col: usize, hi: Ratio },
    /// x = y⁺ − y⁻, both ≥ 0.
    Split { pos: usize, neg: usize },
}

struct PreparedRow {
    coeffs: Vec<Ratio>, // dense over kernel columns
    relation: Relation,
    rhs: Ratio,
}

struct Prepared {
    var_map: Vec<VarMap>,
    kernel_cols: usize,
    rows: Vec<PreparedRow>,
    /// Index of the original constraint a row came from; bound rows carry
    /// `None`.
    origin: Vec<Option<usize>>,
    objective: Vec<Ratio>, // over kernel columns, oriented for minimization
    objective_offset: Ratio,
    negate_value: bool,
}

fn prepare(lp: &LinearProgram) -> Result<Prepared, LpError> {
    assert_eq!(lp.objective.len(), lp.num_vars);
    assert_eq!(lp.bounds.len(), lp.num_vars);
    for (index, c) in lp.constraints.iter().enumerate() {
        if c.coeffs.len() != lp.num_vars {
            return Err(LpError::DimensionMismatch {
                index,
                expected: lp.num_vars,
                got: c.coeffs.len(),
            });
        }
    }

    let mut var_map = Vec::with_capacity(lp.num_vars);
    let mut kernel_cols = 0usize;
    let mut bound_rows: Vec<(usize, Ratio)> = Vec::new(); // (kernel col, ub)
    for (var, (lo, hi)) in lp.bounds.iter().enumerate() {
        match (lo, hi) {
            (Some(lo), Some(hi)) => {
                if lo > hi {
                    return Err(LpError::EmptyBounds {
                        var,
                        lo: lo.clone(),
                        hi: hi.clone(),
                    });
                }
                var_map.push(VarMap::Shifted {
                    col: kernel_cols,
                    lo: lo.clone(),
                });
                bound_rows.push((kernel_cols, hi - lo));
                kernel_cols += 1;
            }
            (Some(lo), None) => {
                var_map.push(VarMap::Shifted {
                    col: kernel_cols,
                    lo: lo.clone(),
                });
                kernel_cols += 1;
            }
            (None, Some(hi)) => {
                var_map.push(VarMap::Mirrored {
                    col: kernel_cols,
                    hi: hi.clone(),
                });
                kernel_cols += 1;
            }
            (None, None) => {
                var_map.push(VarMap::Split {
                    pos: kernel_cols,
                    neg: kernel_cols + 1,
                });
                kernel_cols += 2;
            }
        }
    }

    let rewrite = |coeffs: &[Ratio]| -> (Vec<Ratio>, Ratio) {
        let mut out = vec![Ratio::zero(); kernel_cols];
        let mut constant = Ratio::zero();
        for (a, map) in coeffs.iter().zip(&var_map) {
            if a.is_zero() {
                continue;
            }
            match map {
                VarMap::Shifted { col, lo } => {
                    out[*col] += a;
                    constant += a * lo;
                }
                VarMap::Mirrored { col, hi } => {
                    out[*col] -= a;
                    constant += a * hi;
                }
                VarMap::Split { pos, neg } => {
                    out[*pos] += a;
                    out[*neg] -= a;
                }
            }
        }
        (out, constant)
    };

    let mut rows = Vec::new();
    let mut origin = Vec::new();
    for (index, c) in lp.constraints.iter().enumerate() {
        let (coeffs, constant) = rewrite(&c.coeffs);
        rows.push(PreparedRow {
            coeffs,
            relation: c.relation,
            rhs: &c.rhs - constant,
        });
        origin.push(Some(index));
    }
    for (col, ub) in bound_rows {
        let mut coeffs = vec![Ratio::zero(); kernel_cols];
        coeffs[col] = Ratio::one();
        rows.push(PreparedRow {
            coeffs,
            relation: Relation::Le,
            rhs: ub,
        });
        origin.push(None);
    }

    let negate_value = lp.sense == Sense::Maximize;
    let oriented: Vec<Ratio> = if negate_value {
        lp.objective.iter().map(|c| -c).collect()
    } else {
        lp.objective.clone()
    };
    let (objective, objective_offset) = rewrite(&oriented);

    Ok(Prepared {
        var_map,
        kernel_cols,
        rows,
        origin,
        objective,
        objective_offset,
        negate_value,
    })
}

// ---------------------------------------------------------------------------
// The simplex kernel, generic over an exact fraction scalar. The `Scalar`
// trait shadows `num_traits` method names, so the kernel lives in its own
// scope where only one of the two is imported.
// ---------------------------------------------------------------------------

mod kernel {
    use super::{Prepared, Relation, VarMap};
    use crate::ratio::Ratio;
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::ToPrimitive;

    // ---------------------------------------------------------------------------
    // Scalars: exact fractions with and without overflow.
    // ---------------------------------------------------------------------------

    pub(super) trait Scalar: Clone + PartialEq + PartialOrd + std::fmt::Debug {
        fn from_ratio(r: &Ratio) -> Option<Self>;
        fn to_ratio(&self) -> Ratio;
        fn zero() -> Self;
        fn one() -> Self;
        fn is_zero(&self) -> bool;
        fn is_positive(&self) -> bool;
        fn is_negative(&self) -> bool;
        fn add(&self, other: &Self) -> Option<Self>;
        fn sub(&self, other: &Self) -> Option<Self>;
        fn mul(&self, other: &Self) -> Option<Self>;
        fn div(&self, other: &Self) -> Option<Self>;
        fn neg(&self) -> Self;
    }

    impl Scalar for Ratio {
        fn from_ratio(r: &Ratio) -> Option<Self> {
            Some(r.clone())
        }
        fn to_ratio(&self) -> Ratio {
            self.clone()
        }
        fn zero() -> Self {
            num_traits::Zero::zero()
        }
        fn one() -> Self {
            num_traits::One::one()
        }
        fn is_zero(&self) -> bool {
            num_traits::Zero::is_zero(self)
        }
        fn is_positive(&self) -> bool {
            num_traits::Signed::is_positive(self)
        }
        fn is_negative(&self) -> bool {
            num_traits::Signed::is_negative(self)
        }
        fn add(&self, other: &Self) -> Option<Self> {
            Some(self + other)
        }
        fn sub(&self, other: &Self) -> Option<Self> {
            Some(self - other)
        }
        fn mul(&self, other: &Self) -> Option<Self> {
            Some(self * other)
        }
        fn div(&self, other: &Self) -> Option<Self> {
            Some(self / other)
        }
        fn neg(&self) -> Self {
            -self
        }
    }

    /// Reduced fraction over `i128`; every operation is overflow-checked so the
    /// caller can retry with big rationals.
    #[derive(Clone, Copy, Debug, PartialEq, Eq)]
    pub(super) struct Frac128 {
        num: i128,
        den: i128, // > 0, gcd(num, den) = 1
    }

    impl Frac128 {
        fn new(num: i128, den: i128) -> Option<Self> {
            debug_assert!(den != 0);
            let g = gcd128(num.unsigned_abs(), den.unsigned_abs()) as i128;
            let (mut num, mut den) = (num / g, den / g);
            if den < 0 {
                num = num.checked_neg()?;
                den = den.checked_neg()?;
            }
            Some(Frac128 { num, den })
        }
    }

    fn gcd128(a: u128, b: u128) -> u128 {
        if a == 0 {
            return b.max(1);
        }
        if b == 0 {
            return a;
        }
        a.gcd(&b)
    }

    impl PartialOrd for Frac128 {
        fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
            // den > 0 on both sides; cross-multiply with overflow checks.
            let left = self.num.checked_mul(other.den)?;
            let right = other.num.checked_mul(self.den)?;
            left.partial_cmp(&right)
        }
    }

    impl Scalar for Frac128 {
        fn from_ratio(r: &Ratio) -> Option<Self> {
            let num = r.numer().to_i128()?;
            let den = r.denom().to_i128()?;
            Frac128::new(num, den)
        }
        fn to_ratio(&self) -> Ratio {
            Ratio::new(BigInt::from(self.num), BigInt::from(self.den))
        }
        fn zero() -> Self {
            Frac128 { num: 0, den: 1 }
        }
        fn one() -> Self {
            Frac128 { num: 1, den: 1 }
        }
        fn is_zero(&self) -> bool {
            self.num == 0
        }
        fn is_positive(&self) -> bool {
            self.num > 0
        }
        fn is_negative(&self) -> bool {
            self.num < 0
        }
        fn add(&self, other: &Self) -> Option<Self> {
            let g = gcd128(self.den.unsigned_abs(), other.den.unsigned_abs()) as i128;
            let rd = other.den / g;
            let num = self
                .num
                .checked_mul(rd)?
                .checked_add(other.num.checked_mul(self.den / g)?)?;
            let den = self.den.checked_mul(rd)?;
            Frac128::new(num, den)
        }
        fn sub(&self, other: &Self) -> Option<Self> {
            self.add(&other.neg())
        }
        fn mul(&self, other: &Self) -> Option<Self> {
            let g1 = gcd128(self.num.unsigned_abs(), other.den.unsigned_abs()) as i128;
            let g2 = gcd128(other.num.unsigned_abs(), self.den.unsigned_abs()) as i128;
            let num = (self.num / g1).checked_mul(other.num / g2)?;
            let den = (self.den / g2).checked_mul(other.den / g1)?;
            Frac128::new(num, den)
        }
        fn div(&self, other: &Self) -> Option<Self> {
            if other.num == 0 {
                return None;
            }
            self.mul(&Frac128 {
                num: other.den,
                den: other.num,
            })
            .and_then(|f| Frac128::new(f.num, f.den))
        }
        fn neg(&self) -> Self {
            Frac128 {
                num: -self.num,
                den: self.den,
            }
        }
    }

    // ---------------------------------------------------------------------------
    // The simplex kernel.
    // ---------------------------------------------------------------------------

    pub(super) enum KernelResult {
        Optimal {
            kernel_point: Vec<Ratio>,
            value: Ratio,
            unique: bool,
            /// Simplex multipliers per prepared row.
            multipliers: Vec<Ratio>,
        },
        Infeasible {
            /// Simplex multipliers per prepared row.
            multipliers: Vec<Ratio>,
        },
        Unbounded,
    }

    /// Returns `None` when scalar arithmetic overflowed and a wider scalar is
    /// needed.
    pub(super) fn run_kernel<S: Scalar>(prepared: &Prepared) -> Option<KernelResult> {
        let m = prepared.rows.len();
        let structurals = prepared.kernel_cols;

        // Column layout: structurals, then one slack/surplus per inequality row,
        // then one artificial per row that needs one, then the rhs.
        let mut slack_col = vec![usize::MAX; m];
        let mut artificial_col = vec![usize::MAX; m];
        let mut next = structurals;
        for (i, row) in prepared.rows.iter().enumerate() {
            if row.relation != Relation::Eq {
                slack_col[i] = next;
                next += 1;
            }
        }
        // Row signs: normalize to nonnegative rhs.
        let flip: Vec<bool> = prepared.rows.iter().map(|r| r.rhs.is_negative()).collect();
        for (i, row) in prepared.rows.iter().enumerate() {
            // After sign normalization a Le row with +1 slack provides the
            // initial basis; everything else needs an artificial.
            let slack_positive = match row.relation {
                Relation::Eq => false,
                Relation::Le => !flip[i],
                Relation::Ge => flip[i],
            };
            if !slack_positive {
                artificial_col[i] = next;
                next += 1;
            }
        }
        let cols = next + 1; // + rhs
        let rhs_col = cols - 1;
        let zero = S::zero();
        let mut tableau: Vec<Vec<S>> = vec![vec![zero.clone(); cols]; m];
        let mut basis = vec![usize::MAX; m];

        for (i, row) in prepared.rows.iter().enumerate() {
            let sign: i32 = if flip[i] { -1 } else { 1 };
            for (j, a) in row.coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let v = S::from_ratio(a)?;
                tableau[i][j] = if sign < 0 { v.neg() } else { v };
            }
            let b = S::from_ratio(&row.rhs)?;
            tableau[i][rhs_col] = if sign < 0 { b.neg() } else { b };
            if slack_col[i] != usize::MAX {
                // Le keeps +slack, Ge gets −surplus (pre-normalization signs).
                let dir = match row.relation {
                    Relation::Le => 1,
                    Relation::Ge => -1,
                    Relation::Eq => unreachable!(),
                };
                let v = if dir * sign > 0 { S::one() } else { S::one().neg() };
                tableau[i][slack_col[i]] = v;
            }
            if artificial_col[i] != usize::MAX {
                tableau[i][artificial_col[i]] = S::one();
                basis[i] = artificial_col[i];
            } else {
                basis[i] = slack_col[i];
            }
        }

        let first_artificial = structurals + slack_col.iter().filter(|&&c| c != usize::MAX).count();

        // Phase-1 row: π'A − c' for the artificial-sum objective, which starts
        // as the sum of the artificial rows with the artificial columns zeroed
        // (equivalently, cost row subtracted). Entries stay zero on basics, an
        // entering column improves iff its entry is positive, and the rhs cell
        // holds the current infeasibility.
        let mut phase1 = vec![zero.clone(); cols];
        let mut phase1_active = false;
        for i in 0..m {
            if basis[i] >= first_artificial {
                phase1_active = true;
                for j in (0..first_artificial).chain([rhs_col]) {
                    let sum = phase1[j].add(&tableau[i][j])?;
                    phase1[j] = sum;
                }
            }
        }

        // Phase-2 objective row: reduced-cost form c_j − z_j, tracked the usual
        // way by Gaussian updates alongside the tableau.
        let mut phase2 = vec![zero.clone(); cols];
        for (j, c) in prepared.objective.iter().enumerate() {
            if !c.is_zero() {
                phase2[j] = S::from_ratio(c)?;
            }
        }
        // The initial basis (slacks/artificials) has zero cost in phase 2.

        let pivot = |tableau: &mut Vec<Vec<S>>,
                     phase1: &mut Vec<S>,
                     phase2: &mut Vec<S>,
                     basis: &mut Vec<usize>,
                     row: usize,
                     col: usize|
         -> Option<()> {
            let p = tableau[row][col].clone();
            for j in 0..cols {
                tableau[row][j] = tableau[row][j].div(&p)?;
            }
            for i in 0..m {
                if i == row || tableau[i][col].is_zero() {
                    continue;
                }
                let factor = tableau[i][col].clone();
                for j in 0..cols {
                    let delta = factor.mul(&tableau[row][j])?;
                    tableau[i][j] = tableau[i][j].sub(&delta)?;
                }
            }
            for obj in [phase1, phase2] {
                if obj[col].is_zero() {
                    continue;
                }
                let factor = obj[col].clone();
                for j in 0..cols {
                    let delta = factor.mul(&tableau[row][j])?;
                    obj[j] = obj[j].sub(&delta)?;
                }
            }
            basis[row] = col;
            Some(())
        };

        // Entering rule: steepest reduced cost normally, switching to
        // Bland's lowest-index rule whenever the objective has stalled
        // (degenerate pivots), which is what guarantees termination; Bland
        // mode ends on the next strict improvement. Leaving rule: minimum
        // ratio, ties broken by lowest basic variable index.
        let simplex = |tableau: &mut Vec<Vec<S>>,
                       phase1: &mut Vec<S>,
                       phase2: &mut Vec<S>,
                       basis: &mut Vec<usize>,
                       use_phase1: bool,
                       col_limit: usize|
         -> Option<bool> {
            let mut bland = false;
            let mut stalled = 0usize;
            const STALL_LIMIT: usize = 12;
            loop {
                let obj: &Vec<S> = if use_phase1 { phase1 } else { phase2 };
                // Phase 1 maximizes the (negated) row, phase 2 minimizes
                // cost: the entering test is on the stored row sign.
                let mut entering: Option<(usize, &S)> = None;
                for (j, value) in obj.iter().enumerate().take(col_limit) {
                    let improves = if use_phase1 {
                        value.is_positive()
                    } else {
                        value.is_negative()
                    };
                    if !improves {
                        continue;
                    }
                    if bland {
                        entering = Some((j, value));
                        break;
                    }
                    let steeper = match &entering {
                        None => true,
                        Some((_, best)) => {
                            if use_phase1 {
                                value.partial_cmp(best)? == std::cmp::Ordering::Greater
                            } else {
                                value.partial_cmp(best)? == std::cmp::Ordering::Less
                            }
                        }
                    };
                    if steeper {
                        entering = Some((j, value));
                    }
                }
                let Some((col, _)) = entering else {
                    return Some(true);
                };
                let mut leaving: Option<(usize, S)> = None;
                for i in 0..m {
                    if !tableau[i][col].is_positive() {
                        continue;
                    }
                    let ratio = tableau[i][rhs_col].div(&tableau[i][col])?;
                    let better = match &leaving {
                        None => true,
                        Some((best_i, best)) => {
                            ratio.partial_cmp(best)? == std::cmp::Ordering::Less
                                || (ratio == *best && basis[i] < basis[*best_i])
                        }
                    };
                    if better {
                        leaving = Some((i, ratio));
                    }
                }
                let Some((row, ratio)) = leaving else {
                    return Some(false); // unbounded direction
                };
                let degenerate = ratio.is_zero();
                pivot(tableau, phase1, phase2, basis, row, col)?;
                if degenerate {
                    stalled += 1;
                    if stalled >= STALL_LIMIT {
                        bland = true;
                    }
                } else {
                    stalled = 0;
                    bland = false;
                }
            }
        };

        // Reading an objective row under the initial identity columns
        // recovers the simplex multipliers π. The phase-1 row was built as
        // (rows − cost), i.e. πᵀa_j − c_j, while the phase-2 row is the
        // usual c_j − πᵀa_j; `row_minus_cost` selects the orientation.
        // Artificials cost `art_cost`, slacks 0.
        let recover_multipliers =
            |obj: &Vec<S>, art_cost: &S, row_minus_cost: bool| -> Option<Vec<Ratio>> {
                let mut multipliers = Vec::with_capacity(m);
                for i in 0..m {
                    let pi = if artificial_col[i] != usize::MAX {
                        if row_minus_cost {
                            obj[artificial_col[i]].add(art_cost)?
                        } else {
                            art_cost.sub(&obj[artificial_col[i]])?
                        }
                    } else if row_minus_cost {
                        obj[slack_col[i]].clone()
                    } else {
                        obj[slack_col[i]].neg()
                    };
                    // Undo the rhs sign normalization.
                    let value = if flip[i] { pi.neg() } else { pi };
                    multipliers.push(value.to_ratio());
                }
                Some(multipliers)
            };

        if phase1_active {
            let finished = simplex(
                &mut tableau,
                &mut phase1,
                &mut phase2,
                &mut basis,
                true,
                cols - 1,
            )?;
            debug_assert!(finished, "phase 1 is always bounded");
            if phase1[rhs_col].is_positive() {
                let multipliers = recover_multipliers(&phase1, &S::one(), true)?;
                return Some(KernelResult::Infeasible { multipliers });
            }
            // Drive any artificial still basic (at zero) out of the basis;
            // rows with no eligible pivot are redundant and harmless.
            for i in 0..m {
                if basis[i] < first_artificial {
                    continue;
                }
                if let Some(col) = (0..first_artificial).find(|&j| !tableau[i][j].is_zero()) {
                    pivot(&mut tableau, &mut phase1, &mut phase2, &mut basis, i, col)?;
                }
            }
        }

        let finished = simplex(
            &mut tableau,
            &mut phase1,
            &mut phase2,
            &mut basis,
            false,
            first_artificial,
        )?;
        if !finished {
            return Some(KernelResult::Unbounded);
        }

        let mut kernel_point = vec![Ratio::zero(); structurals];
        for i in 0..m {
            if basis[i] < structurals {
                kernel_point[basis[i]] = tableau[i][rhs_col].to_ratio();
            }
        }
        // The stored row is c_j − z_j with the objective value appearing negated
        // in the rhs cell.
        let value = phase2[rhs_col].neg().to_ratio() + &prepared.objective_offset;

        // Uniqueness: every nonbasic non-artificial column must have strictly
        // positive reduced cost, except mirror halves of split variables whose
        // motion cancels out.
        let basic: std::collections::HashSet<usize> = basis.iter().copied().collect();
        let mut mirror = vec![usize::MAX; structurals];
        for map in &prepared.var_map {
            if let VarMap::Split { pos, neg } = map {
                mirror[*pos] = *neg;
                mirror[*neg] = *pos;
            }
        }
        let mut unique = true;
        for (j, value) in phase2.iter().enumerate().take(first_artificial) {
            if basic.contains(&j) {
                continue;
            }
            if j < structurals && mirror[j] != usize::MAX && basic.contains(&mirror[j]) {
                continue;
            }
            if !value.is_positive() {
                unique = false;
                break;
            }
        }

        let multipliers = recover_multipliers(&phase2, &S::zero(), false)?;
        Some(KernelResult::Optimal {
            kernel_point,
            value,
            unique,
            multipliers,
        })
    }
}


fn finish(lp: &LinearProgram, prepared: &Prepared, result: kernel::KernelResult) -> LpOutcome {
    match result {
        kernel::KernelResult::Optimal {
            kernel_point,
            value,
            unique,
            multipliers,
        } => {
            let mut point = Vec::with_capacity(lp.num_vars);
            for map in &prepared.var_map {
                let x = match map {
                    VarMap::Shifted { col, lo } => lo + &kernel_point[*col],
                    VarMap::Mirrored { col, hi } => hi - &kernel_point[*col],
                    VarMap::Split { pos, neg } => &kernel_point[*pos] - &kernel_point[*neg],
                };
                point.push(x);
            }
            let value = if prepared.negate_value { -value } else { value };
            let mut row_duals = vec![Ratio::zero(); lp.constraints.len()];
            for (i, origin) in prepared.origin.iter().enumerate() {
                if let Some(index) = origin {
                    row_duals[*index] = if prepared.negate_value {
                        -&multipliers[i]
                    } else {
                        multipliers[i].clone()
                    };
                }
            }
            LpOutcome::Optimal(Solution {
                point,
                value,
                unique,
                row_duals,
            })
        }
        kernel::KernelResult::Infeasible { multipliers } => {
            let mut row_multipliers = vec![Ratio::zero(); lp.constraints.len()];
            for (i, origin) in prepared.origin.iter().enumerate() {
                if let Some(index) = origin {
                    row_multipliers[*index] = multipliers[i].clone();
                }
            }
            LpOutcome::Infeasible(FarkasCertificate { row_multipliers })
        }
        kernel::KernelResult::Unbounded => LpOutcome::Unbounded,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::{int, rat};
    use num_bigint::BigInt;

    fn le(coeffs: &[i64], rhs: i64) -> Constraint {
        Constraint {
            coeffs: coeffs.iter().map(|&c| int(c)).collect(),
            relation: Relation::Le,
            rhs: int(rhs),
        }
    }

    #[test]
    fn maximize_single_variable() {
        let mut lp = LinearProgram::maximize(vec![int(1)]).nonnegative();
        lp.constraints.push(le(&[1], 3));
        match lp.solve().unwrap() {
            LpOutcome::Optimal(s) => {
                assert_eq!(s.point, vec![int(3)]);
                assert_eq!(s.value, int(3));
                assert!(s.unique);
            }
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn infeasible_with_verified_certificate() {
        let mut lp = LinearProgram::feasibility(1);
        lp.push(vec![int(1)], Relation::Ge, int(1));
        lp.push(vec![int(1)], Relation::Le, int(0));
        match lp.solve().unwrap() {
            LpOutcome::Infeasible(cert) => assert!(cert.verify(&lp)),
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn infeasible_against_bounds() {
        let mut lp = LinearProgram::feasibility(1);
        lp.set_upper_bound(0, int(3));
        lp.push(vec![int(1)], Relation::Ge, int(5));
        match lp.solve().unwrap() {
            LpOutcome::Infeasible(cert) => assert!(cert.verify(&lp)),
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn unbounded_direction() {
        let lp = LinearProgram::maximize(vec![int(1)]).nonnegative();
        assert!(matches!(lp.solve().unwrap(), LpOutcome::Unbounded));
    }

    #[test]
    fn degenerate_equalities() {
        // x + y = 1, x − y = 1 → (1, 0), minimize y.
        let mut lp = LinearProgram::minimize(vec![int(0), int(1)]).nonnegative();
        lp.push(vec![int(1), int(1)], Relation::Eq, int(1));
        lp.push(vec![int(1), int(-1)], Relation::Eq, int(1));
        match lp.solve().unwrap() {
            LpOutcome::Optimal(s) => assert_eq!(s.point, vec![int(1), int(0)]),
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn free_variables_take_negative_values() {
        // minimize x subject to x ≥ −5 written as a constraint.
        let mut lp = LinearProgram::minimize(vec![int(1)]);
        lp.push(vec![int(1)], Relation::Ge, int(-5));
        match lp.solve().unwrap() {
            LpOutcome::Optimal(s) => assert_eq!(s.point, vec![int(-5)]),
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn scaling_leaves_the_argmin_unchanged() {
        // maximize 3x + 2y over x + y ≤ 4, x ≤ 2, y ≤ 3. Optimum (2, 2).
        let build = |scale: Ratio| {
            let mut lp = LinearProgram::maximize(vec![int(3) * &scale, int(2) * &scale])
                .nonnegative();
            lp.push(
                vec![scale.clone(), scale.clone()],
                Relation::Le,
                int(4) * &scale,
            );
            lp.push(vec![scale.clone(), int(0)], Relation::Le, int(2) * &scale);
            lp.push(vec![int(0), scale.clone()], Relation::Le, int(3) * &scale);
            lp
        };
        for scale in [int(1), rat(7, 3), rat(1, 12)] {
            match build(scale).solve().unwrap() {
                LpOutcome::Optimal(s) => assert_eq!(s.point, vec![int(2), int(2)]),
                other => panic!("expected optimum, got {other:?}"),
            }
        }
    }

    #[test]
    fn duality_on_the_final_basis() {
        // x ≥ 0 only, so the recovered multipliers are an optimal dual:
        // the primal objective must equal the dual bound Σ π_i b_i exactly.
        let mut lp = LinearProgram::maximize(vec![int(5), int(4)]).nonnegative();
        lp.push(vec![int(6), int(4)], Relation::Le, int(24));
        lp.push(vec![int(1), int(2)], Relation::Le, int(6));
        match lp.solve().unwrap() {
            LpOutcome::Optimal(s) => {
                assert_eq!(s.value, int(21));
                assert_eq!(s.point, vec![int(3), rat(3, 2)]);
                let dual_bound: Ratio = s.row_duals[0].clone() * int(24)
                    + s.row_duals[1].clone() * int(6);
                assert_eq!(dual_bound, s.value);
            }
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn lex_minimize_orders_objectives() {
        // minimize (x, then −y) over x + y = 1, x, y ≥ 0 → (0, 1).
        let mut lp = LinearProgram::feasibility(2).nonnegative();
        lp.push(vec![int(1), int(1)], Relation::Eq, int(1));
        let point = lex_minimize(&[vec![int(1), int(0)], vec![int(0), int(-1)]], &lp).unwrap();
        assert_eq!(point, vec![int(0), int(1)]);
    }

    #[test]
    fn single_objective_stack_matches_solve() {
        let mut lp = LinearProgram::minimize(vec![int(1)]).nonnegative();
        lp.push(vec![int(1)], Relation::Ge, int(2));
        let point = lex_minimize(&[vec![int(1)]], &lp).unwrap();
        match lp.solve().unwrap() {
            LpOutcome::Optimal(s) => assert_eq!(s.point, point),
            other => panic!("expected optimum, got {other:?}"),
        }
    }

    #[test]
    fn fallback_handles_huge_rationals() {
        // Coefficients far beyond i128 force the big-rational kernel.
        let huge = Ratio::new(
            BigInt::from(10).pow(60),
            BigInt::from(7),
        );
        let mut lp = LinearProgram::maximize(vec![int(1)]).nonnegative();
        lp.push(vec![int(1)], Relation::Le, huge.clone());
        match lp.solve().unwrap() {
            LpOutcome::Optimal(s) => assert_eq!(s.point[0], huge),
            other => panic!("expected optimum, got {other:?}"),
        }
    }
}
