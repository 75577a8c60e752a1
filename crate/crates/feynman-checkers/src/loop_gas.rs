//! Exact enumeration of edge-disjoint loop configurations on small
//! space-time tori: the loop-gas route to antiparticle values.
//!
//! The lattice lives on the torus `[0, T eps]^2` with opposite sides
//! identified. Points have half-integer coordinates in units of `eps` with
//! integer coordinate sum; a point is *even* when its doubled x-coordinate
//! is even. Every point emits two edges, to `(x +- eps/2, t + eps/2)`,
//! giving `2 T^2` points and `4 T^2` directed edges.
//!
//! A configuration is an edge-disjoint set of loops (closed trails),
//! optionally with one open trail from a source edge to a sink edge. Its
//! weight is a product over the nodes (consecutive edge pairs):
//!
//! ```text
//! turn at odd node:      -i m eps        straight: 1
//! turn at even node:     -delta          straight: 1
//! every odd node:        / sqrt(1 + m^2 eps^2)
//! every even node:       / sqrt(1 - delta^2)
//! ```
//!
//! with an extra factor −1 per loop. The finite-lattice propagator is the
//! ratio of the source-to-sink configuration sum to the plain one.
//!
//! Enumeration is depth-first over a canonical edge order with used-edge
//! bitmasks; a loop is canonicalized by starting at its minimal edge, and
//! loops are emitted in increasing order of those minimal edges. Weights
//! depend on the configuration only through its signature (loop parity and
//! the four node counters), so one enumeration pass serves any `(mu,
//! delta)` evaluation, in particular the small-imaginary-mass ladder.

use std::collections::BTreeMap;

use num::complex::Complex64;

use crate::error::{Error, Result};
use crate::params::LatticeParams;
use crate::spectral::anti_amplitude;

/// Torus of `2 T^2` lattice points with the two mass parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusLattice {
    t_size: i64,
    eps: f64,
    m: f64,
    delta: f64,
}

/// Hard enumeration bound (edge count `4 T^2 <= 36`).
pub const TORUS_MAX: i64 = 3;

impl TorusLattice {
    pub fn new(t_size: i64, m: f64, eps: f64, delta: f64) -> Result<Self> {
        if t_size < 1 {
            return Err(Error::InvalidParams(format!(
                "torus size must be >= 1, got {t_size}"
            )));
        }
        if !(delta > 0.0 && delta < 0.5) {
            return Err(Error::InvalidParams(format!(
                "imaginary mass must lie in (0, 1/2), got {delta}"
            )));
        }
        if !(m >= 0.0) || !(eps > 0.0) {
            return Err(Error::InvalidParams(format!(
                "need m >= 0 and eps > 0, got m={m}, eps={eps}"
            )));
        }
        Ok(Self {
            t_size,
            eps,
            m,
            delta,
        })
    }

    pub fn t_size(&self) -> i64 {
        self.t_size
    }

    pub fn points(&self) -> i64 {
        2 * self.t_size * self.t_size
    }

    pub fn edges(&self) -> usize {
        (4 * self.t_size * self.t_size) as usize
    }

    /// Point id for doubled coordinates `(x2, t2)` with `x2 + t2` even,
    /// both taken modulo `2T`.
    fn point_id(&self, x2: i64, t2: i64) -> usize {
        let two_t = 2 * self.t_size;
        let x2 = x2.rem_euclid(two_t);
        let t2 = t2.rem_euclid(two_t);
        debug_assert_eq!((x2 + t2) & 1, 0);
        (t2 * self.t_size + (x2 - (t2 & 1)) / 2) as usize
    }

    fn point_coords(&self, id: usize) -> (i64, i64) {
        let t2 = id as i64 / self.t_size;
        let x2 = 2 * (id as i64 % self.t_size) + (t2 & 1);
        (x2, t2)
    }

    fn point_is_even(&self, id: usize) -> bool {
        self.point_coords(id).0 & 1 == 0
    }

    /// Edge id for the edge leaving doubled point `(x2, t2)` in direction
    /// `dir` (0: up-right, 1: up-left).
    pub fn edge_id(&self, x2: i64, t2: i64, dir: u8) -> usize {
        2 * self.point_id(x2, t2) + dir as usize
    }

    fn edge_start(&self, e: usize) -> usize {
        e / 2
    }

    fn edge_dir(&self, e: usize) -> u8 {
        (e & 1) as u8
    }

    fn edge_end(&self, e: usize) -> usize {
        let (x2, t2) = self.point_coords(self.edge_start(e));
        let dx = if self.edge_dir(e) == 0 { 1 } else { -1 };
        self.point_id(x2 + dx, t2 + 1)
    }
}

/// Node counters plus component data identifying the weight of a
/// configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct ConfigSignature {
    pub loops: u32,
    pub odd_turns: u32,
    pub even_turns: u32,
    pub odd_nodes: u32,
    pub even_nodes: u32,
}

/// Multiset of configuration signatures; the enumeration result for one
/// torus graph (independent of `m`, `eps`, `delta`).
#[derive(Debug, Clone, Default)]
pub struct LoopCensus {
    pub counts: BTreeMap<ConfigSignature, u64>,
    pub configurations: u64,
}

impl LoopCensus {
    fn record(&mut self, sig: ConfigSignature) {
        *self.counts.entry(sig).or_insert(0) += 1;
        self.configurations += 1;
    }

    /// Weighted sum of all recorded configurations at the lattice
    /// parameters.
    pub fn evaluate(&self, lat: &TorusLattice) -> Complex64 {
        let mu = lat.m * lat.eps;
        let turn_odd = Complex64::new(0.0, -mu);
        let turn_even = Complex64::new(-lat.delta, 0.0);
        let denom_odd = (1.0 + mu * mu).sqrt();
        let denom_even = (1.0 - lat.delta * lat.delta).sqrt();
        let mut total = Complex64::new(0.0, 0.0);
        for (sig, &count) in &self.counts {
            let mut w = turn_odd.powu(sig.odd_turns) * turn_even.powu(sig.even_turns);
            w /= Complex64::new(
                denom_odd.powi(sig.odd_nodes as i32) * denom_even.powi(sig.even_nodes as i32),
                0.0,
            );
            if sig.loops & 1 == 1 {
                w = -w;
            }
            total += w * count as f64;
        }
        total
    }
}

struct Enumerator<'a> {
    lat: &'a TorusLattice,
    /// out-edges by start point
    out_edges: Vec<[usize; 2]>,
    used: u64,
    sig: ConfigSignature,
    census: LoopCensus,
    /// collect full signatures for small lattices (tests)
    collect: Option<Vec<ConfigSignature>>,
}

impl<'a> Enumerator<'a> {
    fn new(lat: &'a TorusLattice, collect: bool) -> Self {
        let n_points = lat.points() as usize;
        let mut out_edges = vec![[0usize; 2]; n_points];
        for (p, out) in out_edges.iter_mut().enumerate() {
            *out = [2 * p, 2 * p + 1];
        }
        Self {
            lat,
            out_edges,
            used: 0,
            sig: ConfigSignature::default(),
            census: LoopCensus::default(),
            collect: collect.then(Vec::new),
        }
    }

    fn node(&mut self, prev: usize, next: usize) -> (bool, bool) {
        // the node sits at the endpoint of `prev` (= start of `next`)
        let at = self.lat.edge_start(next);
        let even = self.lat.point_is_even(at);
        let turn = self.lat.edge_dir(prev) != self.lat.edge_dir(next);
        if even {
            self.sig.even_nodes += 1;
            if turn {
                self.sig.even_turns += 1;
            }
        } else {
            self.sig.odd_nodes += 1;
            if turn {
                self.sig.odd_turns += 1;
            }
        }
        (even, turn)
    }

    fn unnode(&mut self, even: bool, turn: bool) {
        if even {
            self.sig.even_nodes -= 1;
            if turn {
                self.sig.even_turns -= 1;
            }
        } else {
            self.sig.odd_nodes -= 1;
            if turn {
                self.sig.odd_turns -= 1;
            }
        }
    }

    fn record(&mut self) {
        self.census.record(self.sig);
        if let Some(c) = &mut self.collect {
            c.push(self.sig);
        }
    }

    /// Enumerate loop sets whose minimal edges are `>= min_start`, on top
    /// of the currently used edges.
    fn loops_from(&mut self, min_start: usize) {
        self.record();
        for start in min_start..self.lat.edges() {
            if self.used & (1 << start) != 0 {
                continue;
            }
            self.used |= 1 << start;
            self.walk_loop(start, start);
            self.used &= !(1 << start);
        }
    }

    /// Extend the open loop that began at `start` and currently ends with
    /// `last`.
    fn walk_loop(&mut self, start: usize, last: usize) {
        let at = self.lat.edge_end(last);
        for dir in 0..2usize {
            let next = self.out_edges[at][dir];
            if next == start && last != start {
                // closing the cycle: the node (last, start) completes it
                let (e, t) = self.node(last, start);
                self.sig.loops += 1;
                self.loops_from(start + 1);
                self.sig.loops -= 1;
                self.unnode(e, t);
                continue;
            }
            // canonical form: all non-start edges of the loop exceed start
            if next <= start || self.used & (1 << next) != 0 {
                continue;
            }
            let (e, t) = self.node(last, next);
            self.used |= 1 << next;
            self.walk_loop(start, next);
            self.used &= !(1 << next);
            self.unnode(e, t);
        }
    }

    /// Extend the open source-to-sink trail ending with `last`; when the
    /// sink is placed the trail is complete and loops are enumerated on
    /// the remaining edges.
    fn walk_path(&mut self, last: usize, sink: usize) {
        if last == sink {
            self.loops_from(0);
            return;
        }
        let at = self.lat.edge_end(last);
        for dir in 0..2usize {
            let next = self.out_edges[at][dir];
            if self.used & (1 << next) != 0 {
                continue;
            }
            let (e, t) = self.node(last, next);
            self.used |= 1 << next;
            self.walk_path(next, sink);
            self.used &= !(1 << next);
            self.unnode(e, t);
        }
    }
}

fn check_size(lat: &TorusLattice) -> Result<()> {
    if lat.t_size > TORUS_MAX {
        return Err(Error::SizeLimit(format!(
            "torus enumeration supports T <= {TORUS_MAX}, got {}",
            lat.t_size
        )));
    }
    Ok(())
}

/// Census of all loop configurations, or of all configurations with the
/// given source and sink path.
pub fn enumerate_census(
    lat: &TorusLattice,
    source_sink: Option<(usize, usize)>,
) -> Result<LoopCensus> {
    check_size(lat)?;
    let mut en = Enumerator::new(lat, false);
    match source_sink {
        None => en.loops_from(0),
        Some((source, sink)) => {
            if source >= lat.edges() || sink >= lat.edges() {
                return Err(Error::InvalidParams(format!(
                    "edge ids must be < {}, got ({source},{sink})",
                    lat.edges()
                )));
            }
            en.used |= 1 << source;
            en.walk_path(source, sink);
        }
    }
    Ok(en.census)
}

/// All configuration signatures individually (small lattices only; used by
/// the 1x1 ground-truth test and kept exact).
pub fn enumerate_signatures(
    lat: &TorusLattice,
    source_sink: Option<(usize, usize)>,
) -> Result<Vec<ConfigSignature>> {
    check_size(lat)?;
    let mut en = Enumerator::new(lat, true);
    match source_sink {
        None => en.loops_from(0),
        Some((source, sink)) => {
            en.used |= 1 << source;
            en.walk_path(source, sink);
        }
    }
    Ok(en.collect.unwrap())
}

/// Sum of configuration arrows (the partition function of the loop gas),
/// optionally with a source-sink trail.
pub fn config_sum(lat: &TorusLattice, source_sink: Option<(usize, usize)>) -> Result<Complex64> {
    Ok(enumerate_census(lat, source_sink)?.evaluate(lat))
}

/// Finite-lattice propagator: the ratio of the source-to-sink sum to the
/// plain configuration sum.
pub fn finite_propagator(lat: &TorusLattice, source: usize, sink: usize) -> Result<Complex64> {
    let num = config_sum(lat, Some((source, sink)))?;
    let den = config_sum(lat, None)?;
    if den.norm() < 1e-300 {
        return Err(Error::ZeroDenominator);
    }
    Ok(num / den)
}

/// Comparison of the loop-gas estimate against the momentum-integral
/// values; the identification is reported, not gated.
#[derive(Debug, Clone)]
pub struct AntiCheckerEstimate {
    /// `-2 (-i)^k` times the delta-extrapolated finite propagator.
    pub estimate: (Complex64, Complex64),
    /// Momentum-integral values `A1(x, t+eps)` and `A2(x+eps, t+eps)`.
    pub reference: (Complex64, Complex64),
    /// Finite propagators at each ladder delta (diagnostics).
    pub ladder: Vec<(f64, Complex64, Complex64)>,
}

/// Estimates the infinite-lattice propagator from a small torus by
/// Richardson extrapolation in `delta^2` over the given ladder, and
/// reports it against the momentum-integral values. The `T -> infinity`
/// limit is *not* taken (T <= 3); this is an experiment, not a theorem.
pub fn anti_checker_estimate(
    ix: i64,
    it: i64,
    params: LatticeParams,
    t_size: i64,
    deltas: &[f64],
) -> Result<AntiCheckerEstimate> {
    if deltas.len() < 2 {
        return Err(Error::InvalidParams(
            "the delta ladder needs at least two rungs".into(),
        ));
    }
    let two_t = 2 * t_size;
    // source a0 at (0,0) upward-right; sinks f1/f2 leave (x', t') leftward
    // and rightward, with coordinates wrapped onto the torus
    let x2 = (2 * ix).rem_euclid(two_t);
    let t2 = (2 * it).rem_euclid(two_t);
    let mut ladder = Vec::with_capacity(deltas.len());
    for &d in deltas {
        let lat = TorusLattice::new(t_size, params.m(), params.eps(), d)?;
        let a0 = lat.edge_id(0, 0, 0);
        let f1 = lat.edge_id(x2, t2, 1);
        let f2 = lat.edge_id(x2, t2, 0);
        ladder.push((
            d,
            finite_propagator(&lat, a0, f1)?,
            finite_propagator(&lat, a0, f2)?,
        ));
    }
    // Richardson in delta^2 on the last two rungs
    let (d_hi, p1_hi, p2_hi) = ladder[ladder.len() - 2];
    let (d_lo, p1_lo, p2_lo) = ladder[ladder.len() - 1];
    let r = (d_hi * d_hi) / (d_lo * d_lo);
    let extrap = |hi: Complex64, lo: Complex64| (lo * r - hi) / (r - 1.0);
    let minus_2i = Complex64::new(0.0, -2.0); // -2 (-i)^1
    let minus_2 = Complex64::new(2.0, 0.0); // -2 (-i)^2
    let estimate = (
        minus_2i * extrap(p1_hi, p1_lo),
        minus_2 * extrap(p2_hi, p2_lo),
    );
    let (r1, _) = anti_amplitude(ix, it + 1, params)?;
    let (_, r2) = anti_amplitude(ix + 1, it + 1, params)?;
    Ok(AntiCheckerEstimate {
        estimate,
        reference: (r1.value, r2.value),
        ladder,
    })
}
