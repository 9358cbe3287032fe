use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::group::{cayley_ball, GroupElem, GroupSpec};
use super::ends_estimate;
use crate::error::{input, Error, Result};
use crate::group::Word;
use crate::limits::Limits;

/// An integer function on a group with finite boundary, stored on a ball.
///
/// Elements of the ball missing from `values` take `default`. Outside the
/// ball the function is extended by geodesic retraction onto the sphere of
/// radius `radius`, which is well defined once [`AiFunction::validate`] passes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AiFunction {
    pub group: GroupSpec,
    pub radius: u32,
    pub default: i64,
    /// Sorted by element, no repeats.
    pub values: Vec<(GroupElem, i64)>,
}

impl AiFunction {
    pub fn new(group: GroupSpec, radius: u32, default: i64, mut values: Vec<(GroupElem, i64)>) -> Result<Self> {
        group.validate()?;
        for (g, _) in &values {
            let w = group.to_word(g);
            if group.eval(&w)? != *g {
                return input(format!("{g:?} is not a normal form"));
            }
            if group.length(g) > radius as u64 {
                return input(format!("element of length {} lies outside radius {radius}", group.length(g)));
            }
        }
        values.sort();
        for pair in values.windows(2) {
            if pair[0].0 == pair[1].0 && pair[0].1 != pair[1].1 {
                return input("conflicting values for one element");
            }
        }
        values.dedup();
        values.retain(|(_, v)| *v != default);
        Ok(AiFunction { group, radius, default, values })
    }

    /// Values given by words.
    pub fn from_words(group: GroupSpec, radius: u32, default: i64, values: &[(Word, i64)]) -> Result<Self> {
        let vals = values
            .iter()
            .map(|(w, v)| Ok((group.eval(w)?, *v)))
            .collect::<Result<Vec<_>>>()?;
        AiFunction::new(group, radius, default, vals)
    }

    /// Tabulates `f` on the ball of radius `radius`.
    pub fn from_fn(
        group: GroupSpec,
        radius: u32,
        default: i64,
        limits: &Limits,
        f: impl Fn(&GroupElem) -> i64,
    ) -> Result<Self> {
        let ball = cayley_ball(&group, radius, limits)?;
        let values = ball.elems().iter().map(|g| (g.clone(), f(g))).collect();
        AiFunction::new(group, radius, default, values)
    }

    fn stored(&self, g: &GroupElem) -> i64 {
        match self.values.binary_search_by(|(h, _)| h.cmp(g)) {
            Ok(i) => self.values[i].1,
            Err(_) => self.default,
        }
    }

    fn retract(&self, g: &GroupElem) -> GroupElem {
        let gens = self.group.generators();
        let mut h = g.clone();
        let mut len = self.group.length(&h);
        while len > self.radius as u64 {
            let (next, l) = gens
                .iter()
                .map(|s| {
                    let y = self.group.mul(s, &h);
                    let l = self.group.length(&y);
                    (y, l)
                })
                .find(|(_, l)| *l < len)
                .expect("some generator shortens a nontrivial element");
            h = next;
            len = l;
        }
        h
    }

    /// x(g) for any g.
    pub fn value(&self, g: &GroupElem) -> i64 {
        self.stored(&self.retract(g))
    }

    /// (g·x)(k) = x(g⁻¹k).
    pub fn act(&self, g: &GroupElem, k: &GroupElem) -> i64 {
        self.value(&self.group.mul(&self.group.inverse(g), k))
    }

    /// ((g − 1)x)(k).
    pub fn delta(&self, g: &GroupElem, k: &GroupElem) -> i64 {
        self.act(g, k) - self.value(k)
    }

    /// Checks that the extension beyond the ball adds no boundary.
    pub fn validate(&self, limits: &Limits) -> Result<()> {
        let r = self.radius;
        let ball = cayley_ball(&self.group, 2 * r.max(1), limits)?;
        let (labels, _) = ball.components(r, 2 * r.max(1));
        let mut seen: HashMap<usize, i64> = HashMap::new();
        let gens = self.group.generators();
        for i in 0..ball.len() {
            if ball.dist(i) != r {
                continue;
            }
            let g = ball.elem(i);
            let v = self.stored(g);
            if let Some(c) = labels[i] {
                if *seen.entry(c).or_insert(v) != v {
                    return input(format!("values on the sphere of radius {r} are not constant toward infinity"));
                }
            }
            if gens.iter().any(|s| self.value(&self.group.mul(s, g)) != v) {
                return input(format!("boundary meets the sphere of radius {r}"));
            }
        }
        Ok(())
    }

    /// ∂x = {g : x(sg) ≠ x(g) for some generator s}, sorted by length.
    pub fn boundary_of(&self, limits: &Limits) -> Result<Vec<GroupElem>> {
        self.validate(limits)?;
        let ball = cayley_ball(&self.group, self.radius, limits)?;
        let gens = self.group.generators();
        let mut out: Vec<GroupElem> = ball
            .elems()
            .iter()
            .filter(|g| {
                let v = self.value(g);
                gens.iter().any(|s| self.value(&self.group.mul(s, g)) != v)
            })
            .cloned()
            .collect();
        out.sort_by_key(|g| (self.group.length(g), g.clone()));
        Ok(out)
    }

    /// Whether x is constant outside a finite set, so φ_x is a coboundary.
    pub fn is_coboundary(&self, limits: &Limits) -> Result<bool> {
        self.validate(limits)?;
        let r = self.radius;
        let hi = 2 * r.max(1);
        let ball = cayley_ball(&self.group, hi, limits)?;
        let (labels, reaches) = ball.components(r, hi);
        let mut far = (0..ball.len())
            .filter(|&i| ball.dist(i) == r && labels[i].is_some_and(|c| reaches[c]))
            .map(|i| self.stored(ball.elem(i)));
        let Some(first) = far.next() else { return Ok(true) };
        Ok(far.all(|v| v == first))
    }

    /// Pointwise combination at the larger of the two radii.
    pub fn combine(&self, other: &AiFunction, limits: &Limits, f: impl Fn(i64, i64) -> i64) -> Result<AiFunction> {
        if self.group != other.group {
            return input("functions live on different groups");
        }
        let r = self.radius.max(other.radius);
        AiFunction::from_fn(self.group.clone(), r, f(self.default, other.default), limits, |g| {
            f(self.value(g), other.value(g))
        })
    }

    pub fn sub(&self, other: &AiFunction, limits: &Limits) -> Result<AiFunction> {
        self.combine(other, limits, |a, b| a - b)
    }

    pub fn add(&self, other: &AiFunction, limits: &Limits) -> Result<AiFunction> {
        self.combine(other, limits, |a, b| a + b)
    }
}

/// Everything within `m` steps of `set` in the left Cayley graph.
pub fn neighborhood(group: &GroupSpec, set: &[GroupElem], m: u32) -> HashSet<GroupElem> {
    let gens = group.generators();
    let mut seen: HashSet<GroupElem> = set.iter().cloned().collect();
    let mut queue: VecDeque<(GroupElem, u32)> = set.iter().map(|g| (g.clone(), 0)).collect();
    while let Some((g, d)) = queue.pop_front() {
        if d == m {
            continue;
        }
        for s in &gens {
            let y = group.mul(s, &g);
            if seen.insert(y.clone()) {
                queue.push_back((y, d + 1));
            }
        }
    }
    seen
}

/// Almost-invariant functions counting the ends of a group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AiRank {
    pub ends: usize,
    pub rank: usize,
    /// Indicators of all unbounded components but one.
    pub representatives: Vec<AiFunction>,
}

/// Rank of the classes of finite-boundary functions modulo constants and
/// finitely supported ones, read off the unbounded components outside the
/// ball of radius `radius - 1`.
pub fn almost_invariant_rank(g: &GroupSpec, radius: u32, limits: &Limits) -> Result<AiRank> {
    let est = ends_estimate(g, radius, 3 * radius, limits)?;
    if !est.stabilized {
        return input(format!(
            "end count not stabilized at radius {radius} ({} then {})",
            est.count, est.next_count
        ));
    }
    let ball = cayley_ball(g, 3 * radius + 3, limits)?;
    let (labels, reaches) = ball.components(radius, 3 * radius);
    let unbounded: Vec<usize> = (0..reaches.len()).filter(|&c| reaches[c]).collect();
    let mut indicators = Vec::with_capacity(unbounded.len());
    for &c in &unbounded {
        let x = AiFunction::from_fn(g.clone(), radius + 1, 0, limits, |h| {
            let i = ball.index_of(h).expect("inside the ball");
            i64::from(labels[i] == Some(c))
        })?;
        indicators.push(x);
    }
    let n = indicators.len();
    if n == 0 {
        return Ok(AiRank { ends: 0, rank: 0, representatives: Vec::new() });
    }
    let broken = |what: &str| Err(Error::Consistency(format!("indicator check failed: {what}")));
    let mut total = indicators[0].clone();
    for x in &indicators[1..] {
        total = total.add(x, limits)?;
    }
    if !total.is_coboundary(limits)? {
        return broken("the sum of all indicators is not constant at infinity");
    }
    if n >= 2 {
        for (i, x) in indicators.iter().enumerate() {
            if x.is_coboundary(limits)? {
                return broken("an indicator is a coboundary");
            }
            for y in &indicators[i + 1..] {
                if x.sub(y, limits)?.is_coboundary(limits)? {
                    return broken("two indicators differ by a coboundary");
                }
            }
        }
    }
    indicators.truncate(n - 1);
    Ok(AiRank { ends: n, rank: n - 1, representatives: indicators })
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, mut i: usize) -> usize {
        while self.0[i] != i {
            self.0[i] = self.0[self.0[i]];
            i = self.0[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a] = b;
        }
    }
}

/// Whether `x` is constant on every coset `Hg` away from a finite set,
/// tested on the ball of radius `radius`.
///
/// With m the longest generator of H and N the m-neighborhood of ∂x, each
/// coset is cut by the components U of the ball minus N. A piece of a coset
/// inside U counts as infinite when it comes within m of the sphere; x must
/// take one value across the infinite pieces of each coset.
pub fn swarup_kernel_test(x: &AiFunction, h_gens: &[Word], radius: u32, limits: &Limits) -> Result<bool> {
    let g = &x.group;
    let boundary = x.boundary_of(limits)?;
    let hs: Vec<GroupElem> = h_gens
        .iter()
        .map(|w| g.eval(w))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|h| *h != g.identity())
        .collect();
    if hs.is_empty() {
        return Ok(true);
    }
    let m = hs.iter().map(|h| g.length(h)).max().unwrap_or(0) as u32;
    let near = neighborhood(g, &boundary, m);
    let reach = near.iter().map(|h| g.length(h)).max().unwrap_or(0) as u32;
    if reach + m >= radius {
        return input(format!(
            "radius {radius} too small: the {m}-neighborhood of the boundary reaches length {reach}"
        ));
    }
    let ball = cayley_ball(g, radius + m, limits)?;
    let n = ball.len();
    let outside = |i: usize| ball.dist(i) <= radius && !near.contains(ball.elem(i));

    let mut comps = Dsu((0..n).collect());
    for i in (0..n).filter(|&i| outside(i)) {
        for j in ball.neighbors(i) {
            if outside(j) {
                comps.union(i, j);
            }
        }
    }
    let mut cosets = Dsu((0..n).collect());
    for i in 0..n {
        for h in &hs {
            if let Some(j) = ball.index_of(&g.mul(h, ball.elem(i))) {
                cosets.union(i, j);
            }
        }
    }
    // x is constant on each component, so one evaluation per component suffices
    let mut comp_value: HashMap<usize, i64> = HashMap::new();
    let mut seen: HashMap<usize, i64> = HashMap::new();
    for i in (0..n).filter(|&i| outside(i) && ball.dist(i) + m > radius) {
        let piece = cosets.find(i);
        let v = *comp_value.entry(comps.find(i)).or_insert_with(|| x.value(ball.elem(i)));
        if *seen.entry(piece).or_insert(v) != v {
            return Ok(false);
        }
    }
    Ok(true)
}
