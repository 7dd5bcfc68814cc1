//! The fuzzy Prokhorov metric `M̂(μ, ν, t)` and its two exact evaluators.
//!
//! `M̂(μ, ν, t) = 1 − inf { r ∈ (0, 1) : μ(A) ≤ ν(A^{r,t}) + r and
//! ν(A) ≤ μ(A^{r,t}) + r for every A }`.
//!
//! On a finite space it suffices to quantify over subsets of the supports:
//! replacing `A` by `A ∩ supp(μ)` keeps `μ(A)` and can only shrink the
//! neighborhood. Write `g(u, v) = 1 − M(u, v, t)`; the open ball around `u`
//! of radius `r` contains `v` exactly when `g(u, v) < r`.
//!
//! * [`prokhorov_brute`] enumerates support subsets and takes the largest
//!   per-subset infimum.
//! * [`prokhorov_flow`] sorts the distinct gaps into breakpoints
//!   `0 = b₀ < … < b_K`. On each interval `(b_k, b_{k+1}]` the adjacency is
//!   fixed and the worst violation `max_A μ(A) − ν(E(A))` is one minus a
//!   bipartite max flow.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::FlowNetwork;
use crate::measure::{same_space, Measure};
use crate::space::{FuzzySpace, Radius, TimeScale};

/// Default cap on `|supp μ| + |supp ν|` for [`prokhorov_brute`].
pub const DEFAULT_BRUTE_CAP: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Brute,
    Flow,
}

/// Which measure's subsets a witness is drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `μ(A) ≤ ν(A^{r,t}) + r` with `A ⊆ supp μ`.
    First,
    /// `ν(A) ≤ μ(A^{r,t}) + r` with `A ⊆ supp ν`.
    Second,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub side: Side,
    pub points: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProkhorovResult {
    /// `M̂ = 1 − r_star`.
    pub value: f64,
    /// The infimum radius, in `[0, 1]`. It equals 1 only when some membership
    /// is so small that `1 − M` rounds to 1, in which case the true value is
    /// below machine epsilon.
    pub r_star: f64,
    pub method: Method,
    /// For the brute evaluator, a support subset whose constraint binds.
    pub witness: Option<Witness>,
}

impl ProkhorovResult {
    fn new(r_star: f64, method: Method, witness: Option<Witness>) -> Self {
        Self { value: 1.0 - r_star, r_star, method, witness }
    }
}

fn check_pair(mu: &Measure, nu: &Measure) -> Result<()> {
    if same_space(mu.space(), nu.space()) {
        Ok(())
    } else {
        Err(Error::SpaceMismatch)
    }
}

/// Gap matrix `g[a][b] = 1 − M(u_a, v_b, t)` over the two supports.
fn gaps(space: &FuzzySpace, from: &Measure, to: &Measure, t: f64) -> Vec<Vec<f64>> {
    from.atoms()
        .iter()
        .map(|&(u, _)| to.atoms().iter().map(|&(v, _)| space.gap(u, v, t)).collect())
        .collect()
}

/// Bipartite relation between two supports at a fixed `(r, t)`:
/// `(u, v)` is an edge when `v ∈ B(u, r, t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Adjacency {
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

impl Adjacency {
    pub fn at(mu: &Measure, nu: &Measure, r: Radius, t: TimeScale) -> Result<Self> {
        check_pair(mu, nu)?;
        let space = mu.space();
        let (source, target) = (mu.support(), nu.support());
        let mut edges = Vec::new();
        for &u in &source {
            for &v in &target {
                if space.gap(u, v, t.get()) < r.get() {
                    edges.push((u, v));
                }
            }
        }
        Ok(Self { source, target, edges })
    }

    /// The same relation seen from the target side.
    pub fn transpose(&self) -> Self {
        Self {
            source: self.target.clone(),
            target: self.source.clone(),
            edges: self.edges.iter().map(|&(u, v)| (v, u)).collect(),
        }
    }
}

/// Hall deficiency `max_{A ⊆ S} μ(A) − ν(E(A))`, computed as the source mass
/// minus a max flow (source → u with capacity `μ(u)`, unbounded `u → v` for
/// each edge, `v` → sink with capacity `ν(v)`). Never negative.
pub fn hall_deficiency(adj: &Adjacency, mu: &Measure, nu: &Measure) -> f64 {
    let (ns, nt) = (adj.source.len(), adj.target.len());
    let (src, sink) = (0, ns + nt + 1);
    let mut net = FlowNetwork::new(ns + nt + 2);
    let mut supply = 0.0;
    for (a, &u) in adj.source.iter().enumerate() {
        let w = mu.weight(u);
        supply += w;
        net.add_edge(src, 1 + a, w);
    }
    for (b, &v) in adj.target.iter().enumerate() {
        net.add_edge(1 + ns + b, sink, nu.weight(v));
    }
    for &(u, v) in &adj.edges {
        let a = adj.source.iter().position(|&x| x == u).expect("edge source in support");
        let b = adj.target.iter().position(|&x| x == v).expect("edge target in support");
        net.add_edge(1 + a, 1 + ns + b, f64::INFINITY);
    }
    (supply - net.augment(src, sink)).max(0.0)
}

/// Whether `r` satisfies both families of constraints at scale `t`.
pub fn feasible(mu: &Measure, nu: &Measure, r: Radius, t: TimeScale) -> Result<bool> {
    let adj = Adjacency::at(mu, nu, r, t)?;
    let forward = hall_deficiency(&adj, mu, nu);
    let backward = hall_deficiency(&adj.transpose(), nu, mu);
    Ok(forward.max(backward) <= r.get())
}

/// Radius breakpoints with the Hall deficiency on each interval
/// `(b_k, b_{k+1}]` (the last interval ends at 1).
#[derive(Debug, Clone, PartialEq)]
pub struct BreakpointSweep {
    pub breakpoints: Vec<f64>,
    pub deficiencies: Vec<f64>,
}

impl BreakpointSweep {
    pub fn compute(mu: &Measure, nu: &Measure, t: TimeScale) -> Result<Self> {
        check_pair(mu, nu)?;
        let g = gaps(mu.space(), mu, nu, t.get());
        let (ns, nt) = (mu.atoms().len(), nu.atoms().len());

        let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(ns * nt);
        for (a, row) in g.iter().enumerate() {
            for (b, &gap) in row.iter().enumerate() {
                // A gap of 1 means the membership underflowed; the edge never
                // appears for any representable r < 1.
                if gap < 1.0 {
                    pairs.push((gap, a, b));
                }
            }
        }
        pairs.sort_by(|x, y| x.0.total_cmp(&y.0));

        let mut breakpoints = vec![0.0];
        for &(gap, ..) in &pairs {
            if gap > *breakpoints.last().unwrap() {
                breakpoints.push(gap);
            }
        }

        let (src, sink) = (0, ns + nt + 1);
        let mut net = FlowNetwork::new(ns + nt + 2);
        for (a, &(_, w)) in mu.atoms().iter().enumerate() {
            net.add_edge(src, 1 + a, w);
        }
        for (b, &(_, w)) in nu.atoms().iter().enumerate() {
            net.add_edge(1 + ns + b, sink, w);
        }
        // Both totals equal 1 up to rounding; the larger one makes the
        // deficiency cover both directions of the constraint.
        let supply = mu.total_mass().max(nu.total_mass());

        let mut deficiencies = Vec::with_capacity(breakpoints.len());
        let mut flow = 0.0;
        let mut next = 0;
        for &b in &breakpoints {
            while next < pairs.len() && pairs[next].0 <= b {
                let (_, a, c) = pairs[next];
                net.add_edge(1 + a, 1 + ns + c, f64::INFINITY);
                next += 1;
            }
            flow += net.augment(src, sink);
            deficiencies.push((supply - flow).max(0.0));
        }
        Ok(Self { breakpoints, deficiencies })
    }

    /// Infimum of the feasible radii, or 1 when no interval is feasible.
    pub fn infimum(&self) -> f64 {
        let k_max = self.breakpoints.len() - 1;
        for (k, (&b, &d)) in self.breakpoints.iter().zip(&self.deficiencies).enumerate() {
            if d <= b {
                return b;
            }
            let upper = if k < k_max { self.breakpoints[k + 1] } else { 1.0 };
            if d <= upper && d < 1.0 {
                return d;
            }
        }
        1.0
    }
}

/// `M̂(μ, ν, t)` by the breakpoint sweep with one incremental max flow.
pub fn prokhorov_flow(mu: &Measure, nu: &Measure, t: TimeScale) -> Result<ProkhorovResult> {
    let sweep = BreakpointSweep::compute(mu, nu, t)?;
    Ok(ProkhorovResult::new(sweep.infimum(), Method::Flow, None))
}

/// `M̂(μ, ν, t)` by subset enumeration, capped at [`DEFAULT_BRUTE_CAP`]
/// support points in total.
pub fn prokhorov_brute(mu: &Measure, nu: &Measure, t: TimeScale) -> Result<ProkhorovResult> {
    prokhorov_brute_capped(mu, nu, t, DEFAULT_BRUTE_CAP)
}

pub fn prokhorov_brute_capped(
    mu: &Measure,
    nu: &Measure,
    t: TimeScale,
    cap: usize,
) -> Result<ProkhorovResult> {
    check_pair(mu, nu)?;
    let got = mu.atoms().len() + nu.atoms().len();
    if got > cap {
        return Err(Error::SupportCap { cap, got });
    }
    let space = mu.space();
    let forward = worst_subset(mu, nu, &gaps(space, mu, nu, t.get()));
    let backward = worst_subset(nu, mu, &gaps(space, nu, mu, t.get()));
    let (r_star, side, set) = if backward.0 > forward.0 {
        (backward.0, Side::Second, backward.1)
    } else {
        (forward.0, Side::First, forward.1)
    };
    let witness = (r_star > 0.0).then_some(Witness { side, points: set });
    Ok(ProkhorovResult::new(r_star, Method::Brute, witness))
}

/// Largest per-subset infimum over nonempty `A ⊆ supp(from)` of the
/// constraint `from(A) ≤ to(A^{r,t}) + r`, with the subset attaining it.
fn worst_subset(from: &Measure, to: &Measure, gap: &[Vec<f64>]) -> (f64, Vec<usize>) {
    let (ns, nt) = (from.atoms().len(), to.atoms().len());
    let to_w: Vec<f64> = to.atoms().iter().map(|&(_, w)| w).collect();

    // Per mask: mass of A and distance-to-A for each target atom, built from
    // the mask with its lowest bit cleared.
    let subsets = 1usize << ns;
    let mut mass = vec![0.0; subsets];
    let mut reach = vec![f64::INFINITY; subsets * nt];

    let mut best = (0.0, Vec::new());
    for mask in 1..subsets {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        mass[mask] = mass[rest] + from.atoms()[low].1;
        for b in 0..nt {
            reach[mask * nt + b] = reach[rest * nt + b].min(gap[low][b]);
        }
        let row = &reach[mask * nt..(mask + 1) * nt];

        // The infimum of an up-closed set of radii sits at 0, at a jump of
        // r ↦ to(A^{r,t}), or where r meets the remaining deficit. A
        // candidate c is the infimum iff the constraint holds just above c.
        let holds_above = |c: f64| {
            let covered: f64 = row.iter().zip(&to_w).filter(|(&g, _)| g <= c).map(|(_, &w)| w).sum();
            mass[mask] - covered <= c
        };
        let mut candidates = vec![0.0];
        for &g in row {
            if g < 1.0 {
                candidates.push(g);
                let covered: f64 = row.iter().zip(&to_w).filter(|(&h, _)| h <= g).map(|(_, &w)| w).sum();
                candidates.push(mass[mask] - covered);
            }
        }
        candidates.push(mass[mask]);
        let inf = candidates
            .into_iter()
            .filter(|&c| (0.0..1.0).contains(&c) && holds_above(c))
            .fold(1.0, f64::min);

        if inf > best.0 {
            let set = (0..ns).filter(|&a| mask >> a & 1 == 1).map(|a| from.atoms()[a].0).collect();
            best = (inf, set);
        }
    }
    best
}

/// Dispatches to the requested evaluator.
pub fn prokhorov(mu: &Measure, nu: &Measure, t: TimeScale, method: Method) -> Result<ProkhorovResult> {
    match method {
        Method::Flow => prokhorov_flow(mu, nu, t),
        Method::Brute => prokhorov_brute(mu, nu, t),
    }
}

/// `M̂` value only, via the flow evaluator. Convenience for derived spaces.
pub(crate) fn value(mu: &Measure, nu: &Measure, t: TimeScale) -> Result<f64> {
    prokhorov_flow(mu, nu, t).map(|r| r.value)
}
