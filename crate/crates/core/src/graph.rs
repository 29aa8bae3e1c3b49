//! Finite-n samplers for the Poissonian random graph and the configuration
//! model, plus independent edge thinning.
//!
//! All samplers are deterministic functions of their seed. Edges are stored
//! as `(u, v)` with `u < v`, sorted, without duplicates.

use alloc::vec::Vec;

use rand::distributions::{Distribution as _, WeightedIndex};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::dist::{DegreeDistribution, WeightDistribution};
use crate::rng::{stream_rng, STREAM_CONFIGURATION, STREAM_POISSONIAN, STREAM_THINNING};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphModel {
    Poissonian,
    Configuration,
}

impl GraphModel {
    pub fn as_str(self) -> &'static str {
        match self {
            GraphModel::Poissonian => "poissonian",
            GraphModel::Configuration => "configuration",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GraphSample {
    pub n: usize,
    pub edges: Vec<(u32, u32)>,
    pub model: GraphModel,
    pub seed: u64,
    /// Product of all thinning probabilities applied so far.
    pub retention: f64,
}

impl GraphSample {
    /// Builds a sample from an arbitrary edge list: pairs are normalized to
    /// `u < v`, self-loops dropped and duplicates merged.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (u32, u32)>,
        model: GraphModel,
        seed: u64,
    ) -> Result<Self> {
        check_vertex_count(n)?;
        let mut list: Vec<(u32, u32)> = Vec::new();
        for (u, v) in edges {
            if u as usize >= n || v as usize >= n {
                return Err(Error::Domain {
                    what: "vertex id",
                    value: u.max(v) as f64,
                });
            }
            if u != v {
                list.push((u.min(v), u.max(v)));
            }
        }
        list.sort_unstable();
        list.dedup();
        Ok(GraphSample {
            n,
            edges: list,
            model,
            seed,
            retention: 1.0,
        })
    }

    pub fn degrees(&self) -> Vec<u32> {
        let mut deg = alloc::vec![0u32; self.n];
        for &(u, v) in &self.edges {
            deg[u as usize] += 1;
            deg[v as usize] += 1;
        }
        deg
    }

    pub fn mean_degree(&self) -> f64 {
        2.0 * self.edges.len() as f64 / self.n as f64
    }

    /// No self-loops, no repeated pairs, ids in range, sorted.
    pub fn is_simple(&self) -> bool {
        self.edges
            .iter()
            .all(|&(u, v)| u < v && (v as usize) < self.n)
            && self.edges.windows(2).all(|w| w[0] < w[1])
    }
}

fn check_vertex_count(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroVertices);
    }
    if n > u32::MAX as usize {
        return Err(Error::TooManyVertices(n));
    }
    Ok(())
}

/// Number of failures before the first success, for success probability
/// `1 - exp(-rate)`.
fn geometric_skip<R: Rng>(rng: &mut R, rate: f64) -> u64 {
    let u: f64 = 1.0 - rng.gen::<f64>();
    let skip = -libm::log(u) / rate;
    if skip >= u64::MAX as f64 {
        u64::MAX
    } else {
        skip as u64
    }
}

/// Poissonian random graph on `n` vertices: i.i.d. weights from `w`, and
/// each pair `{i, j}` joined independently with probability
/// `1 - exp(-x_i x_j / (n mu))`.
///
/// Vertices are grouped by weight atom. Within each pair of atoms the edge
/// probability is constant, so edges are drawn by geometric skipping over
/// the pair index space, in time proportional to the edge count.
pub fn gen_poissonian(n: usize, w: &WeightDistribution, seed: u64) -> Result<GraphSample> {
    check_vertex_count(n)?;
    let mut rng = stream_rng(seed, STREAM_POISSONIAN);
    let atoms = w.atoms();
    let mut members: Vec<Vec<u32>> = alloc::vec![Vec::new(); atoms.len()];
    if atoms.len() == 1 {
        members[0] = (0..n as u32).collect();
    } else {
        let picker =
            WeightedIndex::new(atoms.iter().map(|a| a.1)).map_err(|_| Error::EmptyDistribution)?;
        for v in 0..n as u32 {
            members[picker.sample(&mut rng)].push(v);
        }
    }
    let scale = n as f64 * w.mean();
    let mut edges = Vec::new();
    if scale > 0.0 {
        for a in 0..atoms.len() {
            for b in a..atoms.len() {
                let rate = atoms[a].0 * atoms[b].0 / scale;
                if rate > 0.0 {
                    if a == b {
                        sample_within(&members[a], rate, &mut rng, &mut edges);
                    } else {
                        sample_between(&members[a], &members[b], rate, &mut rng, &mut edges);
                    }
                }
            }
        }
    }
    edges.sort_unstable();
    let g = GraphSample {
        n,
        edges,
        model: GraphModel::Poissonian,
        seed,
        retention: 1.0,
    };
    debug_assert!(g.is_simple());
    Ok(g)
}

fn sample_between<R: Rng>(
    left: &[u32],
    right: &[u32],
    rate: f64,
    rng: &mut R,
    edges: &mut Vec<(u32, u32)>,
) {
    let width = right.len() as u64;
    let total = left.len() as u64 * width;
    let mut pos = 0u64;
    loop {
        pos = match pos.checked_add(geometric_skip(rng, rate)) {
            Some(p) if p < total => p,
            _ => break,
        };
        let u = left[(pos / width) as usize];
        let v = right[(pos % width) as usize];
        edges.push((u.min(v), u.max(v)));
        pos += 1;
    }
}

fn sample_within<R: Rng>(class: &[u32], rate: f64, rng: &mut R, edges: &mut Vec<(u32, u32)>) {
    let m = class.len() as u64;
    if m < 2 {
        return;
    }
    let total = m * (m - 1) / 2;
    // Pairs (i, j), i < j, enumerated row by row; row i has m - 1 - i entries.
    let mut row = 0u64;
    let mut row_start = 0u64;
    let mut pos = 0u64;
    loop {
        pos = match pos.checked_add(geometric_skip(rng, rate)) {
            Some(p) if p < total => p,
            _ => break,
        };
        while pos >= row_start + (m - 1 - row) {
            row_start += m - 1 - row;
            row += 1;
        }
        let col = row + 1 + (pos - row_start);
        edges.push((class[row as usize], class[col as usize]));
        pos += 1;
    }
}

/// Configuration model on `n` vertices with i.i.d. degrees from `d`.
///
/// An odd half-edge total gets one extra half-edge on vertex `n - 1`. Half
/// edges are paired by a uniform shuffle; self-loops are dropped and
/// parallel edges merged.
pub fn gen_configuration(n: usize, d: &DegreeDistribution, seed: u64) -> Result<GraphSample> {
    check_vertex_count(n)?;
    let mut rng = stream_rng(seed, STREAM_CONFIGURATION);
    let pmf = d.pmf();
    let mut degrees: Vec<u32> = if pmf.len() == 1 {
        alloc::vec![0; n]
    } else {
        let picker =
            WeightedIndex::new(pmf.iter().copied()).map_err(|_| Error::EmptyDistribution)?;
        (0..n).map(|_| picker.sample(&mut rng) as u32).collect()
    };
    let total: u64 = degrees.iter().map(|&k| k as u64).sum();
    if total % 2 == 1 {
        degrees[n - 1] += 1;
    }
    let mut stubs: Vec<u32> = Vec::with_capacity(total as usize + 1);
    for (v, &k) in degrees.iter().enumerate() {
        stubs.extend(core::iter::repeat_n(v as u32, k as usize));
    }
    stubs.shuffle(&mut rng);
    let mut edges: Vec<(u32, u32)> = stubs
        .chunks_exact(2)
        .filter(|pair| pair[0] != pair[1])
        .map(|pair| (pair[0].min(pair[1]), pair[0].max(pair[1])))
        .collect();
    edges.sort_unstable();
    edges.dedup();
    let g = GraphSample {
        n,
        edges,
        model: GraphModel::Configuration,
        seed,
        retention: 1.0,
    };
    debug_assert!(g.is_simple());
    Ok(g)
}

/// Keeps each edge independently with probability `p`.
pub fn thin_edges(g: &GraphSample, p: f64, seed: u64) -> Result<GraphSample> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::Domain {
            what: "retention probability",
            value: p,
        });
    }
    if p == 1.0 {
        return Ok(g.clone());
    }
    let mut rng = stream_rng(seed, STREAM_THINNING);
    let edges = g
        .edges
        .iter()
        .copied()
        .filter(|_| rng.gen::<f64>() < p)
        .collect();
    Ok(GraphSample {
        n: g.n,
        edges,
        model: g.model,
        seed: g.seed,
        retention: g.retention * p,
    })
}
