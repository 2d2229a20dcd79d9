//! The nucleolus over the simplex {x ≥ 0, Σx = 1}: the lexicographic
//! minimizer of the sorted excess vector e(S,x) = v(S) − x(S) over proper
//! nonempty coalitions.
//!
//! Computed by the successive-LP scheme: minimize the maximum excess, fix
//! the coalitions whose excess is constant on the optimal face, and repeat
//! on the rest. Coalition rows are generated on demand — a full 2^n-row
//! tableau would be hopeless at n = 12 — with a separation scan over the
//! truth table certifying each stage optimum. Fixed-coalition detection
//! uses the affine hull of the optimal face: a tight coalition whose
//! incidence vector lies in the span of the accumulated equalities is
//! constant outright; the rest are settled by one auxiliary LP each, with
//! optimal points cached as witnesses to prune later candidates.

use super::{IndexError, IndexKind, PowerVector};
use crate::game::SimpleGame;
use crate::lp::{LinearProgram, LpOutcome, Relation, Solution};
use crate::ratio::Ratio;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

/// 2^n excess rows per game; beyond 14 players the scans dominate.
pub const MAX_NUCLEOLUS_PLAYERS: usize = 14;

pub fn nucleolus(game: &SimpleGame) -> Result<PowerVector, IndexError> {
    let n = game.player_count();
    if n > MAX_NUCLEOLUS_PLAYERS {
        return Err(IndexError::Unsupported {
            kind: IndexKind::Nucleolus.to_string(),
            detail: format!("nucleolus supports at most {MAX_NUCLEOLUS_PLAYERS} players (got {n})"),
        });
    }
    let values = if n == 1 {
        vec![Ratio::one()]
    } else if let Some(values) = veto_shortcut(game) {
        values
    } else {
        Maschler::new(game).run()?
    };
    Ok(PowerVector {
        kind: IndexKind::Nucleolus,
        values,
    })
}

/// With a nonempty veto set V (players in every winning coalition), the
/// first excess level forces all mass onto V, and on that face every
/// losing coalition's excess −x(S∩V) appears with a multiplicity that
/// depends only on |N∖V|, so the remaining lexicographic problem is fully
/// symmetric in V: the nucleolus is uniform on the veto players.
fn veto_shortcut(game: &SimpleGame) -> Option<Vec<Ratio>> {
    let n = game.player_count();
    let full = (1u32 << n) - 1;
    let mut veto = full;
    for mask in 1..=full {
        if game.is_winning_mask(mask) {
            veto &= mask;
            if veto == 0 {
                return None;
            }
        }
    }
    let size = veto.count_ones() as i64;
    let share = crate::ratio::rat(1, size);
    Some(
        (0..n)
            .map(|i| {
                if veto >> i & 1 == 1 {
                    share.clone()
                } else {
                    Ratio::zero()
                }
            })
            .collect(),
    )
}

/// Excesses of all proper nonempty coalitions at x, sorted descending.
/// The nucleolus makes this vector lexicographically minimal.
pub fn sorted_excess_vector(game: &SimpleGame, x: &[Ratio]) -> Vec<Ratio> {
    let n = game.player_count();
    assert_eq!(x.len(), n);
    let full = (1u32 << n) - 1;
    let mut sums = vec![Ratio::zero(); 1 << n];
    for mask in 1..=full {
        let low = mask & mask.wrapping_neg();
        sums[mask as usize] = &sums[(mask & !low) as usize] + &x[low.trailing_zeros() as usize];
    }
    let mut excesses: Vec<Ratio> = (1..full)
        .map(|mask| {
            let v = if game.is_winning_mask(mask) {
                Ratio::one()
            } else {
                Ratio::zero()
            };
            v - &sums[mask as usize]
        })
        .collect();
    excesses.sort_by(|a, b| b.cmp(a));
    excesses
}

// ---------------------------------------------------------------------------

struct Maschler<'a> {
    game: &'a SimpleGame,
    n: usize,
    /// Coalitions whose excess is already constant on the current face.
    removed: Vec<bool>,
    /// x(S) = value rows; independent by construction.
    eq_rows: Vec<(u32, Ratio)>,
    /// Row-reduced basis of {all-ones row} ∪ {χ_S : S fixed}; rank n means
    /// the face is a single point.
    rref: Vec<Vec<Ratio>>,
    /// Generated inequality coalitions, shared across stages.
    generated: Vec<u32>,
    prev_t: Option<Ratio>,
}

impl<'a> Maschler<'a> {
    fn new(game: &'a SimpleGame) -> Self {
        let n = game.player_count();
        let mut rref = Vec::new();
        insert_into_rref(&mut rref, vec![Ratio::one(); n]);
        // Singleton rows keep the first LP bounded.
        let generated: Vec<u32> = (0..n).map(|i| 1u32 << i).collect();
        Maschler {
            game,
            n,
            removed: vec![false; 1 << n],
            eq_rows: Vec::new(),
            rref,
            generated,
            prev_t: None,
        }
    }

    fn coalition_value(&self, mask: u32) -> Ratio {
        if self.game.is_winning_mask(mask) {
            Ratio::one()
        } else {
            Ratio::zero()
        }
    }

    fn run(&mut self) -> Result<Vec<Ratio>, IndexError> {
        for _stage in 0..=self.n {
            if self.rref.len() == self.n {
                return self.point_from_equalities();
            }
            let (x, t, unique) = self.solve_stage()?;
            if unique {
                return Ok(x);
            }
            let scan = scan_excesses(self.game, &x, &self.removed, &t);
            debug_assert!(scan.violating.is_empty(), "stage optimum not certified");
            let mut tight = scan.tight;
            tight.sort_unstable();
            let mut witnesses: Vec<SubsetSums> = Vec::new();
            let mut fixed_any = false;
            'candidates: for mask in tight {
                if self.removed[mask as usize] {
                    continue;
                }
                if self.in_span(mask) {
                    // Constant on the affine hull of the face, hence on the
                    // face; the implied value is its value at x.
                    self.removed[mask as usize] = true;
                    fixed_any = true;
                    continue;
                }
                let v = self.coalition_value(mask);
                for w in &witnesses {
                    // A witness already separates this coalition from t.
                    if w.excess_cmp(mask, &v, &t) == std::cmp::Ordering::Less {
                        continue 'candidates;
                    }
                }
                let (aux_point, aux_value) = self.solve_aux(mask, &t)?;
                let min_excess = &v - &aux_value;
                if min_excess == t {
                    self.removed[mask as usize] = true;
                    self.eq_rows.push((mask, &v - &t));
                    let inserted = self.insert_mask_into_rref(mask);
                    debug_assert!(inserted, "span test said independent");
                    self.generated.retain(|&g| g != mask);
                    fixed_any = true;
                    if self.rref.len() == self.n {
                        return self.point_from_equalities();
                    }
                } else {
                    witnesses.push(SubsetSums::build(&aux_point));
                }
            }
            if !fixed_any {
                return Err(IndexError::Internal(
                    "excess minimization stage fixed no coalition".to_string(),
                ));
            }
            self.prev_t = Some(t);
        }
        Err(IndexError::Internal(
            "excess minimization did not converge".to_string(),
        ))
    }

    /// min t over the current face, rows generated on demand. Returns a
    /// certified optimum and whether the LP vertex was provably unique.
    fn solve_stage(&mut self) -> Result<(Vec<Ratio>, Ratio, bool), IndexError> {
        let n = self.n;
        // Rows of coalitions fixed meanwhile would pin t above the true
        // maximum over the unfixed set; their constraints hold implicitly.
        let removed = &self.removed;
        self.generated.retain(|&m| !removed[m as usize]);
        let mut rounds = 0usize;
        let mut force_primal = false;
        loop {
            rounds += 1;
            if rounds > (2 << n) {
                return Err(IndexError::Internal(format!(
                    "row generation stalled after {rounds} rounds on {:?}",
                    self.game
                )));
            }
            // Once the row set outgrows the variable count, the dual (n+2
            // constraints, one column per row) is far cheaper to pivot.
            let result = if !force_primal && self.generated.len() > 2 * n {
                self.stage_lp_dual()?
            } else {
                None
            };
            let (x, t, unique) = match result {
                Some((x, t)) => (x, t, false),
                None => self.stage_lp_primal()?,
            };
            let scan = scan_excesses(self.game, &x, &self.removed, &t);
            if scan.violating.is_empty() {
                return Ok((x, t, unique));
            }
            // A violated row already in the LP means the point came from a
            // failed dual extraction; redo this round through the primal.
            force_primal = scan
                .violating
                .iter()
                .any(|m| self.generated.contains(m));
            if !force_primal {
                self.absorb_violations(scan.violating);
            }
        }
    }

    /// One exact solve of min t s.t. e_S(x) ≤ t over the generated rows on
    /// the current face. Also reports provable uniqueness of the vertex.
    fn stage_lp_primal(&self) -> Result<(Vec<Ratio>, Ratio, bool), IndexError> {
        let n = self.n;
        let mut lp = LinearProgram::minimize(unit_last(n + 1));
        for i in 0..n {
            lp.set_lower_bound(i, Ratio::zero());
        }
        lp.push(ones_row(n, 1), Relation::Eq, Ratio::one());
        for (mask, value) in &self.eq_rows {
            lp.push(incidence(*mask, n, 1), Relation::Eq, value.clone());
        }
        if let Some(prev) = &self.prev_t {
            lp.push(unit_last(n + 1), Relation::Le, prev.clone());
        }
        for &mask in &self.generated {
            // x(S) + t ≥ v(S)
            let mut row = incidence(mask, n, 1);
            row[n] = Ratio::one();
            lp.push(row, Relation::Ge, self.coalition_value(mask));
        }
        let solution = optimal(lp.solve()?)?;
        let mut x = solution.point;
        let t = x.pop().expect("t variable present");
        Ok((x, t, solution.unique))
    }

    /// The same solve through the dual: maximize Σ v_S y_S + μ + prev·π
    /// (+ Σ c_f ν_f) subject to one ≤-constraint per player plus the
    /// Σy + π = 1 normalization. The primal point is read off the dual's
    /// constraint multipliers; `None` means the extraction failed and the
    /// caller should use the primal form.
    fn stage_lp_dual(&self) -> Result<Option<(Vec<Ratio>, Ratio)>, IndexError> {
        let n = self.n;
        let r = self.generated.len();
        let has_prev = self.prev_t.is_some();
        let f = self.eq_rows.len();
        let cols = r + usize::from(has_prev) + 1 + f;
        let mu_col = r + usize::from(has_prev);

        let mut objective = Vec::with_capacity(cols);
        for &mask in &self.generated {
            objective.push(self.coalition_value(mask));
        }
        if let Some(prev) = &self.prev_t {
            objective.push(prev.clone());
        }
        objective.push(Ratio::one());
        for (_, value) in &self.eq_rows {
            objective.push(value.clone());
        }
        let mut lp = LinearProgram::maximize(objective);
        for j in 0..r {
            lp.set_lower_bound(j, Ratio::zero());
        }
        if has_prev {
            lp.set_upper_bound(r, Ratio::zero());
        }
        for i in 0..n {
            let mut row = vec![Ratio::zero(); cols];
            for (j, &mask) in self.generated.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    row[j] = Ratio::one();
                }
            }
            row[mu_col] = Ratio::one();
            for (j, (mask, _)) in self.eq_rows.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    row[mu_col + 1 + j] = Ratio::one();
                }
            }
            lp.push(row, Relation::Le, Ratio::zero());
        }
        let mut norm_row = vec![Ratio::zero(); cols];
        for cell in norm_row.iter_mut().take(r + usize::from(has_prev)) {
            *cell = Ratio::one();
        }
        lp.push(norm_row, Relation::Eq, Ratio::one());

        let solution = optimal(lp.solve()?)?;
        let t = solution.value;
        for sign_flip in [false, true] {
            let x: Vec<Ratio> = solution.row_duals[..n]
                .iter()
                .map(|d| if sign_flip { -d } else { d.clone() })
                .collect();
            if self.face_point_ok(&x) {
                return Ok(Some((x, t)));
            }
        }
        Ok(None)
    }

    /// Simplex membership and the accumulated equalities; cap rows are
    /// certified separately by the separation scan.
    fn face_point_ok(&self, x: &[Ratio]) -> bool {
        if x.iter().any(|v| v < &Ratio::zero()) {
            return false;
        }
        if x.iter().sum::<Ratio>() != Ratio::one() {
            return false;
        }
        self.eq_rows.iter().all(|(mask, value)| {
            let mut total = Ratio::zero();
            let mut rest = *mask;
            while rest != 0 {
                total += &x[rest.trailing_zeros() as usize];
                rest &= rest - 1;
            }
            &total == value
        })
    }

    /// max x(S) over the face capped at t*; its optimum decides whether the
    /// excess of S can drop below t* anywhere on the face.
    fn solve_aux(&mut self, target: u32, t_star: &Ratio) -> Result<(Vec<Ratio>, Ratio), IndexError> {
        let n = self.n;
        let removed = &self.removed;
        self.generated.retain(|&m| !removed[m as usize]);
        let mut rounds = 0usize;
        let mut force_primal = false;
        loop {
            rounds += 1;
            if rounds > (2 << n) {
                return Err(IndexError::Internal(format!(
                    "aux row generation stalled after {rounds} rounds on {:?}",
                    self.game
                )));
            }
            let result = if !force_primal && self.generated.len() > 2 * n {
                self.aux_lp_dual(target, t_star)?
            } else {
                None
            };
            let (point, value) = match result {
                Some(found) => found,
                None => self.aux_lp_primal(target, t_star)?,
            };
            let scan = scan_excesses(self.game, &point, &self.removed, t_star);
            if scan.violating.is_empty() {
                return Ok((point, value));
            }
            force_primal = scan
                .violating
                .iter()
                .any(|m| self.generated.contains(m));
            if !force_primal {
                self.absorb_violations(scan.violating);
            }
        }
    }

    fn aux_lp_primal(&self, target: u32, t_star: &Ratio) -> Result<(Vec<Ratio>, Ratio), IndexError> {
        let n = self.n;
        let mut lp = LinearProgram::maximize(incidence(target, n, 0));
        for i in 0..n {
            lp.set_lower_bound(i, Ratio::zero());
        }
        lp.push(ones_row(n, 0), Relation::Eq, Ratio::one());
        for (mask, value) in &self.eq_rows {
            lp.push(incidence(*mask, n, 0), Relation::Eq, value.clone());
        }
        for &mask in &self.generated {
            // e(S) ≤ t* ⟺ x(S) ≥ v(S) − t*
            lp.push(
                incidence(mask, n, 0),
                Relation::Ge,
                self.coalition_value(mask) - t_star,
            );
        }
        let solution = optimal(lp.solve()?)?;
        Ok((solution.point, solution.value))
    }

    fn aux_lp_dual(
        &self,
        target: u32,
        t_star: &Ratio,
    ) -> Result<Option<(Vec<Ratio>, Ratio)>, IndexError> {
        let n = self.n;
        let r = self.generated.len();
        let f = self.eq_rows.len();
        let cols = r + 1 + f;
        let mu_col = r;

        // Dual of min −x(T): maximize Σ (v_S − t*) y_S + μ + Σ c_f ν_f
        // subject to per-player columns ≤ −χ_T(i).
        let mut objective = Vec::with_capacity(cols);
        for &mask in &self.generated {
            objective.push(self.coalition_value(mask) - t_star);
        }
        objective.push(Ratio::one());
        for (_, value) in &self.eq_rows {
            objective.push(value.clone());
        }
        let mut lp = LinearProgram::maximize(objective);
        for j in 0..r {
            lp.set_lower_bound(j, Ratio::zero());
        }
        for i in 0..n {
            let mut row = vec![Ratio::zero(); cols];
            for (j, &mask) in self.generated.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    row[j] = Ratio::one();
                }
            }
            row[mu_col] = Ratio::one();
            for (j, (mask, _)) in self.eq_rows.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    row[mu_col + 1 + j] = Ratio::one();
                }
            }
            let rhs = if target >> i & 1 == 1 {
                -Ratio::one()
            } else {
                Ratio::zero()
            };
            lp.push(row, Relation::Le, rhs);
        }
        let solution = optimal(lp.solve()?)?;
        let value = -solution.value; // back from the min −x(T) form
        for sign_flip in [false, true] {
            let x: Vec<Ratio> = solution.row_duals[..n]
                .iter()
                .map(|d| if sign_flip { -d } else { d.clone() })
                .collect();
            if self.face_point_ok(&x) && coalition_sum(&x, target) == value {
                return Ok(Some((x, value)));
            }
        }
        Ok(None)
    }

    fn absorb_violations(&mut self, violating: Vec<u32>) {
        let budget = 3 * self.n;
        for mask in violating.into_iter().take(budget) {
            if !self.generated.contains(&mask) {
                self.generated.push(mask);
            }
        }
    }

    fn in_span(&self, mask: u32) -> bool {
        let mut row = incidence(mask, self.n, 0);
        reduce_against(&self.rref, &mut row);
        row.iter().all(Zero::is_zero)
    }

    fn insert_mask_into_rref(&mut self, mask: u32) -> bool {
        insert_into_rref(&mut self.rref, incidence(mask, self.n, 0))
    }

    /// With rank n the equalities pin a single point; Gaussian elimination
    /// recovers it.
    fn point_from_equalities(&self) -> Result<Vec<Ratio>, IndexError> {
        let n = self.n;
        let mut rows: Vec<Vec<Ratio>> = Vec::with_capacity(self.eq_rows.len() + 1);
        let mut aug = ones_row(n, 1);
        aug[n] = Ratio::one();
        rows.push(aug);
        for (mask, value) in &self.eq_rows {
            let mut row = incidence(*mask, n, 1);
            row[n] = value.clone();
            rows.push(row);
        }
        let mut pivot_of_col = vec![usize::MAX; n];
        let mut reduced: Vec<Vec<Ratio>> = Vec::new();
        for mut row in rows {
            for (col, &pivot) in pivot_of_col.iter().enumerate() {
                if pivot != usize::MAX && !row[col].is_zero() {
                    let factor = row[col].clone();
                    let pivot_row = reduced[pivot].clone();
                    for j in 0..=n {
                        row[j] -= &factor * &pivot_row[j];
                    }
                }
            }
            if let Some(col) = (0..n).find(|&c| !row[c].is_zero()) {
                let lead = row[col].clone();
                for j in 0..=n {
                    row[j] /= &lead;
                }
                pivot_of_col[col] = reduced.len();
                reduced.push(row);
            }
        }
        if pivot_of_col.contains(&usize::MAX) {
            return Err(IndexError::Internal(
                "equality system does not determine the point".to_string(),
            ));
        }
        // Back-substitute.
        let mut x = vec![Ratio::zero(); n];
        for col in (0..n).rev() {
            let r = pivot_of_col[col];
            let mut value = reduced[r][n].clone();
            for j in (col + 1)..n {
                value -= &reduced[r][j] * &x[j];
            }
            x[col] = value;
        }
        Ok(x)
    }
}

fn optimal(outcome: LpOutcome) -> Result<Solution, IndexError> {
    match outcome {
        LpOutcome::Optimal(solution) => Ok(solution),
        LpOutcome::Infeasible(_) => Err(IndexError::Internal(
            "excess LP infeasible on a nonempty face".to_string(),
        )),
        LpOutcome::Unbounded => Err(IndexError::Internal(
            "excess LP unbounded below".to_string(),
        )),
    }
}

fn coalition_sum(x: &[Ratio], mask: u32) -> Ratio {
    let mut total = Ratio::zero();
    let mut rest = mask;
    while rest != 0 {
        total += &x[rest.trailing_zeros() as usize];
        rest &= rest - 1;
    }
    total
}

fn incidence(mask: u32, n: usize, extra: usize) -> Vec<Ratio> {
    let mut row = vec![Ratio::zero(); n + extra];
    let mut rest = mask;
    while rest != 0 {
        row[rest.trailing_zeros() as usize] = Ratio::one();
        rest &= rest - 1;
    }
    row
}

fn ones_row(n: usize, extra: usize) -> Vec<Ratio> {
    let mut row = vec![Ratio::one(); n];
    row.extend(std::iter::repeat_with(Ratio::zero).take(extra));
    row
}

fn unit_last(len: usize) -> Vec<Ratio> {
    let mut row = vec![Ratio::zero(); len];
    row[len - 1] = Ratio::one();
    row
}

fn reduce_against(rref: &[Vec<Ratio>], row: &mut Vec<Ratio>) {
    for basis_row in rref {
        let lead = basis_row
            .iter()
            .position(|v| !v.is_zero())
            .expect("rref rows are nonzero");
        if !row[lead].is_zero() {
            let factor = &row[lead] / &basis_row[lead];
            for j in 0..row.len() {
                let delta = &factor * &basis_row[j];
                row[j] -= delta;
            }
        }
    }
}

fn insert_into_rref(rref: &mut Vec<Vec<Ratio>>, mut row: Vec<Ratio>) -> bool {
    reduce_against(rref, &mut row);
    if row.iter().all(Zero::is_zero) {
        return false;
    }
    rref.push(row);
    true
}

// ---------------------------------------------------------------------------
// Separation scan.
// ---------------------------------------------------------------------------

struct Scan {
    /// Masks with excess strictly above t, most violated first.
    violating: Vec<u32>,
    /// Masks with excess exactly t.
    tight: Vec<u32>,
}

/// Subset sums of a rational point, in scaled-integer form when the common
/// denominator is small (the usual case for simplex vertices of 0/1
/// systems) and exact rationals otherwise.
enum SubsetSums {
    Int { scale: i128, sums: Vec<i64> },
    Big { sums: Vec<Ratio> },
}

const FAST_SCALE_LIMIT: i128 = 1 << 40;

impl SubsetSums {
    fn build(x: &[Ratio]) -> SubsetSums {
        let n = x.len();
        let scale = crate::ratio::denominator_lcm(x);
        if let Some(scale) = scale.to_i128().filter(|&s| s < FAST_SCALE_LIMIT) {
            let scale_big = BigInt::from(scale);
            let mut numerators = Vec::with_capacity(n);
            let mut ok = true;
            for value in x {
                let scaled = (value * Ratio::from_integer(scale_big.clone())).to_integer();
                match scaled.to_i64() {
                    Some(v) => numerators.push(v),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok && numerators.iter().map(|v| v.unsigned_abs()).sum::<u64>() < u64::MAX / 4 {
                let mut sums = vec![0i64; 1 << n];
                for mask in 1..(1u32 << n) {
                    let low = mask & mask.wrapping_neg();
                    sums[mask as usize] =
                        sums[(mask & !low) as usize] + numerators[low.trailing_zeros() as usize];
                }
                return SubsetSums::Int { scale, sums };
            }
        }
        let mut sums = vec![Ratio::zero(); 1 << n];
        for mask in 1..(1u32 << n) {
            let low = mask & mask.wrapping_neg();
            sums[mask as usize] =
                &sums[(mask & !low) as usize] + &x[low.trailing_zeros() as usize];
        }
        SubsetSums::Big { sums }
    }

    /// Compares e(S, x) = v − x(S) against the threshold t.
    fn excess_cmp(&self, mask: u32, v: &Ratio, t: &Ratio) -> std::cmp::Ordering {
        match self {
            SubsetSums::Int { scale, sums } => {
                let (tn, td) = (t.numer().to_i128(), t.denom().to_i128());
                if let (Some(tn), Some(td)) = (tn, td) {
                    if td < FAST_SCALE_LIMIT && tn.unsigned_abs() < (1u128 << 44) {
                        let v_int = if v.is_one() { *scale } else { 0 };
                        let excess_num = v_int - sums[mask as usize] as i128;
                        return (excess_num * td).cmp(&(tn * scale));
                    }
                }
                let excess = v - Ratio::new(
                    BigInt::from(sums[mask as usize]),
                    BigInt::from(*scale),
                );
                excess.cmp(t)
            }
            SubsetSums::Big { sums } => {
                let excess = v - &sums[mask as usize];
                excess.cmp(t)
            }
        }
    }

    fn excess_key(&self, mask: u32, winning: bool) -> ExcessKey {
        match self {
            SubsetSums::Int { scale, sums } => {
                let v = if winning { *scale } else { 0 };
                ExcessKey::Int(v - sums[mask as usize] as i128)
            }
            SubsetSums::Big { sums } => {
                let v = if winning { Ratio::one() } else { Ratio::zero() };
                ExcessKey::Big(v - &sums[mask as usize])
            }
        }
    }
}

#[derive(PartialEq, Eq, PartialOrd, Ord)]
enum ExcessKey {
    Int(i128),
    Big(Ratio),
}

fn scan_excesses(game: &SimpleGame, x: &[Ratio], removed: &[bool], t: &Ratio) -> Scan {
    let n = game.player_count();
    let full = (1u32 << n) - 1;
    let sums = SubsetSums::build(x);
    let one = Ratio::one();
    let zero = Ratio::zero();
    let mut violating: Vec<(ExcessKey, u32)> = Vec::new();
    let mut tight = Vec::new();
    for mask in 1..full {
        if removed[mask as usize] {
            continue;
        }
        let winning = game.is_winning_mask(mask);
        let v = if winning { &one } else { &zero };
        match sums.excess_cmp(mask, v, t) {
            std::cmp::Ordering::Greater => {
                violating.push((sums.excess_key(mask, winning), mask));
            }
            std::cmp::Ordering::Equal => tight.push(mask),
            std::cmp::Ordering::Less => {}
        }
    }
    violating.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    Scan {
        violating: violating.into_iter().map(|(_, m)| m).collect(),
        tight,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::WeightedGame;
    use crate::ratio::{int, rat};
    use num_traits::Signed;

    fn table(q: i64, w: &[i64]) -> SimpleGame {
        WeightedGame::from_weights(int(q), w.iter().map(|&x| int(x)).collect())
            .unwrap()
            .realize()
            .unwrap()
    }

    #[test]
    fn known_values() {
        assert_eq!(
            nucleolus(&table(2, &[1, 1, 1])).unwrap().values,
            vec![rat(1, 3), rat(1, 3), rat(1, 3)]
        );
        // Player 1 is a veto player.
        assert_eq!(
            nucleolus(&table(3, &[2, 1, 1])).unwrap().values,
            vec![int(1), int(0), int(0)]
        );
        assert_eq!(
            nucleolus(&table(1, &[1, 0, 0])).unwrap().values,
            vec![int(1), int(0), int(0)]
        );
        // Unanimity splits evenly.
        assert_eq!(
            nucleolus(&table(3, &[1, 1, 1])).unwrap().values,
            vec![rat(1, 3), rat(1, 3), rat(1, 3)]
        );
        // Minimal winning {1,2},{1,3},{1,4},{2,3,4}: no veto player, and
        // equalizing the four excesses pins (2/5, 1/5, 1/5, 1/5).
        assert_eq!(
            nucleolus(&table(4, &[3, 2, 1, 1])).unwrap().values,
            vec![rat(2, 5), rat(1, 5), rat(1, 5), rat(1, 5)]
        );
        // Quota 5 instead makes player 1 a veto player.
        assert_eq!(
            nucleolus(&table(5, &[3, 2, 1, 1])).unwrap().values,
            vec![int(1), int(0), int(0), int(0)]
        );
    }

    #[test]
    fn lies_on_the_simplex() {
        for (q, w) in [(4i64, vec![2i64, 2, 1, 1]), (7, vec![4, 3, 2, 1]), (3, vec![1, 1, 1, 1, 1])] {
            let g = table(q, &w);
            let nuc = nucleolus(&g).unwrap();
            assert_eq!(nuc.sum(), int(1));
            assert!(nuc.values.iter().all(|v| !v.is_negative()));
        }
    }

    /// Exhaustive oracle: the nucleolus must be lexicographically no worse
    /// than every point of a fine simplex grid.
    #[test]
    fn beats_grid_points_on_all_three_player_games() {
        let denominator = 60i64;
        for bits in 0u64..256 {
            let Ok(g) = SimpleGame::from_raw_bits(3, vec![bits]) else {
                continue;
            };
            let nuc = nucleolus(&g).unwrap();
            let ours = sorted_excess_vector(&g, &nuc.values);
            let mut best_grid: Option<(Vec<Ratio>, Vec<Ratio>)> = None;
            for a in 0..=denominator {
                for b in 0..=(denominator - a) {
                    let c = denominator - a - b;
                    let point = vec![
                        rat(a, denominator),
                        rat(b, denominator),
                        rat(c, denominator),
                    ];
                    let excess = sorted_excess_vector(&g, &point);
                    assert!(
                        ours <= excess,
                        "grid point {point:?} beats nucleolus {:?} on {g:?}",
                        nuc.values
                    );
                    match &best_grid {
                        Some((_, e)) if e <= &excess => {}
                        _ => best_grid = Some((point, excess)),
                    }
                }
            }
            // Every 3-player nucleolus has denominator dividing 60, so the
            // grid optimum must coincide with ours.
            let (_, best_excess) = best_grid.unwrap();
            assert_eq!(ours, best_excess, "grid argmin differs on {g:?}");
        }
    }

    #[test]
    fn veto_control_concentrates_power() {
        // Two veto players split evenly regardless of the rest.
        let g = SimpleGame::from_min_winning(
            4,
            &[
                crate::game::Coalition::from_players(&[0, 1, 2], 4),
                crate::game::Coalition::from_players(&[0, 1, 3], 4),
            ],
        )
        .unwrap();
        assert_eq!(
            nucleolus(&g).unwrap().values,
            vec![rat(1, 2), rat(1, 2), int(0), int(0)]
        );
    }
}
