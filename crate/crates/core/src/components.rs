//! Connected components by disjoint-set union.

use alloc::vec::Vec;

use crate::graph::GraphSample;

/// Union by size with path halving.
#[derive(Debug, Clone)]
pub struct DisjointSets {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n as u32).collect(),
            size: alloc::vec![1; n],
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let grand = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = grand;
            x = grand;
        }
        x
    }

    /// Merges the sets of `a` and `b`; returns false if already joined.
    pub fn union(&mut self, a: u32, b: u32) -> bool {
        let mut ra = self.find(a);
        let mut rb = self.find(b);
        if ra == rb {
            return false;
        }
        if self.size[ra as usize] < self.size[rb as usize] {
            core::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb as usize] = ra;
        self.size[ra as usize] += self.size[rb as usize];
        true
    }

    pub fn set_size(&mut self, x: u32) -> usize {
        let r = self.find(x);
        self.size[r as usize] as usize
    }

    /// Sizes of all sets, largest first.
    pub fn sizes(&mut self) -> Vec<usize> {
        let mut sizes: Vec<usize> = (0..self.parent.len() as u32)
            .filter(|&x| self.parent[x as usize] == x)
            .map(|r| self.size[r as usize] as usize)
            .collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes
    }
}

/// Component sizes of one graph, largest first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentCensus {
    pub n: usize,
    pub sizes: Vec<usize>,
    pub largest: usize,
    /// Zero when the graph has a single component.
    pub second: usize,
}

impl ComponentCensus {
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Self {
        let mut sets = DisjointSets::new(n);
        for &(u, v) in edges {
            sets.union(u, v);
        }
        let sizes = sets.sizes();
        let largest = sizes.first().copied().unwrap_or(0);
        let second = sizes.get(1).copied().unwrap_or(0);
        ComponentCensus {
            n,
            sizes,
            largest,
            second,
        }
    }

    pub fn largest_fraction(&self) -> f64 {
        self.largest as f64 / self.n as f64
    }

    pub fn second_fraction(&self) -> f64 {
        self.second as f64 / self.n as f64
    }
}

pub fn components(g: &GraphSample) -> ComponentCensus {
    ComponentCensus::from_edges(g.n, &g.edges)
}
