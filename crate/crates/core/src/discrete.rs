//! Greedy, replacement greedy, and exhaustive maximization of a set function.
//!
//! All argmax reductions scan candidates in increasing index order and only
//! replace the incumbent on a strictly larger value, so ties go to the
//! smallest index.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ground::{ElementId, SubsetSelection};
use crate::matroid::MatroidConstraint;
use crate::objective::SetFunction;

pub const DEFAULT_ENUMERATION_CAP: u128 = 5_000_000;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct GreedyTrace {
    /// Selected element and its marginal gain at selection time.
    pub picks: Vec<(ElementId, f64)>,
}

impl GreedyTrace {
    pub fn gains(&self) -> impl Iterator<Item = f64> + '_ {
        self.picks.iter().map(|p| p.1)
    }
}

fn check_ground(f: &dyn SetFunction, c: &MatroidConstraint) -> Result<()> {
    if f.ground_size() != c.ground_size() {
        return Err(Error::GroundSetMismatch {
            expected: c.ground_size(),
            actual: f.ground_size(),
        });
    }
    Ok(())
}

fn finite_gain(g: f64, e: ElementId) -> Result<f64> {
    if g.is_finite() {
        Ok(g)
    } else {
        Err(Error::NonFinite(format!("marginal gain of element {e} is {g}")))
    }
}

/// Index of the largest gain over `candidates`, smallest index on ties.
fn argmax_gain(
    f: &dyn SetFunction,
    s: &SubsetSelection,
    candidates: impl IntoIterator<Item = ElementId>,
) -> Result<Option<(ElementId, f64)>> {
    let mut best: Option<(ElementId, f64)> = None;
    for e in candidates {
        let g = finite_gain(f.marginal(s, e), e)?;
        if best.is_none_or(|(_, b)| g > b) {
            best = Some((e, g));
        }
    }
    Ok(best)
}

/// Adds the feasible element of largest marginal gain until no feasible
/// addition remains. Zero-gain elements are still added.
pub fn greedy(f: &dyn SetFunction, c: &MatroidConstraint) -> Result<(SubsetSelection, GreedyTrace)> {
    check_ground(f, c)?;
    let mut s = SubsetSelection::empty(c.ground_size());
    let mut trace = GreedyTrace::default();
    loop {
        let cands = c.feasible_additions(&s)?;
        let Some((e, g)) = argmax_gain(f, &s, cands)? else {
            break;
        };
        s.insert(e);
        trace.picks.push((e, g));
    }
    Ok((s, trace))
}

/// Greedy with lazily refreshed upper bounds on the marginal gains.
///
/// Selects exactly the same elements as [`greedy`] for submodular `f`; it
/// only skips evaluations that cannot change the argmax.
pub fn lazy_greedy(
    f: &dyn SetFunction,
    c: &MatroidConstraint,
) -> Result<(SubsetSelection, GreedyTrace)> {
    check_ground(f, c)?;
    let n = c.ground_size();
    let mut s = SubsetSelection::empty(n);
    let mut trace = GreedyTrace::default();
    let mut bound = vec![f64::INFINITY; n];
    let mut fresh_round = vec![usize::MAX; n];
    let mut round = 0;
    loop {
        let cands = c.feasible_additions(&s)?;
        if cands.is_empty() {
            break;
        }
        loop {
            // Highest bound, smallest index on ties.
            let mut top = cands[0];
            for &e in &cands[1..] {
                if bound[e.index()] > bound[top.index()] {
                    top = e;
                }
            }
            if fresh_round[top.index()] == round {
                s.insert(top);
                trace.picks.push((top, bound[top.index()]));
                break;
            }
            bound[top.index()] = finite_gain(f.marginal(&s, top), top)?;
            fresh_round[top.index()] = round;
        }
        round += 1;
    }
    Ok((s, trace))
}

/// One replacement-greedy update for `|S| ≤ k`.
///
/// Below capacity the best element is added. At capacity, the element whose
/// removal leaves the largest value is dropped and the best element of
/// `V ∖ (S ∖ {e*})` is added back, possibly `e*` itself.
pub fn replacement_greedy(f: &dyn SetFunction, k: usize, s: &SubsetSelection) -> Result<SubsetSelection> {
    if s.ground_size() != f.ground_size() {
        return Err(Error::GroundSetMismatch {
            expected: f.ground_size(),
            actual: s.ground_size(),
        });
    }
    if s.cardinality() > k {
        return Err(Error::Precondition(format!(
            "replacement greedy needs |S| <= k, got |S| = {} > {k}",
            s.cardinality()
        )));
    }
    let n = f.ground_size();
    let base = if s.cardinality() < k {
        s.clone()
    } else {
        if k == 0 {
            return Ok(s.clone());
        }
        let mut drop: Option<(ElementId, f64)> = None;
        for e in s.iter() {
            let v = f.value(&s.without(e));
            if !v.is_finite() {
                return Err(Error::NonFinite(format!("value without element {e} is {v}")));
            }
            if drop.is_none_or(|(_, b)| v > b) {
                drop = Some((e, v));
            }
        }
        s.without(drop.expect("k > 0 so S is nonempty").0)
    };
    let cands = (0..n).map(ElementId).filter(|&e| !base.contains(e));
    let mut out = base.clone();
    if let Some((e, _)) = argmax_gain(f, &base, cands)? {
        out.insert(e);
    }
    Ok(out)
}

/// Exact `max_{S ∈ I} f(S)` by enumerating independent sets in lexicographic
/// order; ties go to the lexicographically smallest set.
pub fn brute_force_max(
    f: &dyn SetFunction,
    c: &MatroidConstraint,
    cap: u128,
) -> Result<(SubsetSelection, f64)> {
    check_ground(f, c)?;
    let count = c.count_independent_sets();
    if count > cap {
        return Err(Error::InstanceTooLarge { count, cap });
    }
    let n = c.ground_size();
    let caps = c.capacities();
    let mut used = vec![0usize; caps.len()];
    let mut cur = SubsetSelection::empty(n);
    let v0 = f.value(&cur);
    let mut best = (cur.clone(), v0);
    if !v0.is_finite() {
        return Err(Error::NonFinite("value of the empty set".into()));
    }
    enumerate(f, c, &caps, &mut used, &mut cur, 0, &mut best)?;
    Ok(best)
}

fn enumerate(
    f: &dyn SetFunction,
    c: &MatroidConstraint,
    caps: &[usize],
    used: &mut [usize],
    cur: &mut SubsetSelection,
    start: usize,
    best: &mut (SubsetSelection, f64),
) -> Result<()> {
    for e in start..c.ground_size() {
        let b = c.block_index(e);
        if used[b] == caps[b] {
            continue;
        }
        used[b] += 1;
        cur.insert(ElementId(e));
        let v = f.value(cur);
        if !v.is_finite() {
            return Err(Error::NonFinite(format!("value of {cur} is {v}")));
        }
        if v > best.1 {
            *best = (cur.clone(), v);
        }
        enumerate(f, c, caps, used, cur, e + 1, best)?;
        cur.remove(ElementId(e));
        used[b] -= 1;
    }
    Ok(())
}
