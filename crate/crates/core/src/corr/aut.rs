//! Exhaustive automorphism search for `Map(X)` and `Corr(X)` on small `X`.
//!
//! Images are chosen only for a generating set; every other value follows
//! from multiplicativity and is propagated as soon as both factors are known,
//! so inconsistent partial assignments die early. Candidates for each
//! generator are restricted to elements with the same isomorphism-invariant
//! signature.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{all_correspondences, all_maps, FiniteCorr, HomTable};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ambient {
    /// All self-maps.
    MapX,
    /// All full-domain correspondences.
    CorrX,
}

impl Ambient {
    fn budget(self) -> usize {
        match self {
            Ambient::MapX => 4,
            Ambient::CorrX => 3,
        }
    }

    pub fn elements(self, n: usize) -> Result<Vec<FiniteCorr>> {
        if n > self.budget() {
            return Err(Error::BudgetExceeded(format!("{self:?} on {n} points (limit {})", self.budget())));
        }
        match self {
            Ambient::MapX => all_maps(n),
            Ambient::CorrX => all_correspondences(n),
        }
    }
}

struct Cayley {
    m: usize,
    mul: Vec<u32>,
}

impl Cayley {
    fn build(elems: &[FiniteCorr]) -> Self {
        let index: HashMap<&FiniteCorr, u32> = elems.iter().enumerate().map(|(i, k)| (k, i as u32)).collect();
        let m = elems.len();
        let mul: Vec<u32> = (0..m * m)
            .into_par_iter()
            .map(|ij| {
                let (i, j) = (ij / m, ij % m);
                index[&elems[i].compose(&elems[j]).expect("same ground")]
            })
            .collect();
        Cayley { m, mul }
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.m + b] as usize
    }

    /// Invariants preserved by every automorphism.
    fn signature(&self, a: usize) -> [usize; 9] {
        let m = self.m;
        let idem = (self.mul(a, a) == a) as usize;
        let mut left_img = vec![false; m];
        let mut right_img = vec![false; m];
        let (mut fix_l, mut fix_r, mut abs_l, mut abs_r) = (0, 0, 0, 0);
        for s in 0..m {
            let (as_, sa) = (self.mul(a, s), self.mul(s, a));
            left_img[as_] = true;
            right_img[sa] = true;
            fix_l += (as_ == s) as usize;
            fix_r += (sa == s) as usize;
            abs_l += (as_ == a) as usize;
            abs_r += (sa == a) as usize;
        }
        // index and period of the cyclic subsemigroup generated by a
        let mut seen = HashMap::new();
        let (mut x, mut k) = (a, 1usize);
        while let std::collections::hash_map::Entry::Vacant(e) = seen.entry(x) {
            e.insert(k);
            x = self.mul(x, a);
            k += 1;
        }
        let start = seen[&x];
        [
            idem,
            left_img.iter().filter(|&&b| b).count(),
            right_img.iter().filter(|&&b| b).count(),
            fix_l,
            fix_r,
            abs_l,
            abs_r,
            start,
            k - start,
        ]
    }

    /// Right-multiplication closure of `gens`.
    fn closure(&self, gens: &[usize]) -> Vec<bool> {
        let mut inside = vec![false; self.m];
        let mut queue: Vec<usize> = gens.to_vec();
        for &g in gens {
            inside[g] = true;
        }
        while let Some(e) = queue.pop() {
            for &g in gens {
                let p = self.mul(e, g);
                if !inside[p] {
                    inside[p] = true;
                    queue.push(p);
                }
            }
        }
        inside
    }
}

struct Search<'a> {
    cay: &'a Cayley,
    gens: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    sig: Vec<[usize; 9]>,
    image: Vec<Option<usize>>,
    used: Vec<bool>,
    assigned: Vec<usize>,
    found: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn assign(&mut self, a: usize, b: usize) -> bool {
        match self.image[a] {
            Some(x) => x == b,
            None => {
                if self.used[b] || self.sig[a] != self.sig[b] {
                    return false;
                }
                self.image[a] = Some(b);
                self.used[b] = true;
                self.assigned.push(a);
                true
            }
        }
    }

    fn unwind(&mut self, mark: usize) {
        while self.assigned.len() > mark {
            let a = self.assigned.pop().expect("len > mark");
            let b = self.image[a].take().expect("assigned");
            self.used[b] = false;
        }
    }

    /// Extends the assignment by multiplicativity; false on a conflict.
    fn propagate(&mut self, from: usize) -> bool {
        let mut next = from;
        while next < self.assigned.len() {
            let x = self.assigned[next];
            next += 1;
            let mut k = 0;
            while k < next {
                let y = self.assigned[k];
                k += 1;
                let (ix, iy) = (self.image[x].expect("assigned"), self.image[y].expect("assigned"));
                let pairs = [(self.cay.mul(x, y), self.cay.mul(ix, iy)), (self.cay.mul(y, x), self.cay.mul(iy, ix))];
                for (p, ip) in pairs {
                    if !self.assign(p, ip) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, level: usize) {
        if level == self.gens.len() {
            if self.image.iter().all(Option::is_some) {
                self.found.push(self.image.iter().map(|x| x.expect("total")).collect());
            }
            return;
        }
        let g = self.gens[level];
        let candidates = self.candidates[level].clone();
        for c in candidates {
            let mark = self.assigned.len();
            if self.assign(g, c) && self.propagate(mark) {
                self.run(level + 1);
            }
            self.unwind(mark);
        }
    }
}

/// All automorphisms of the ambient semigroup on `n` points, as tables
/// sorted by their images.
pub fn enumerate_automorphisms(n: usize, ambient: Ambient) -> Result<Vec<HomTable>> {
    let elems = ambient.elements(n)?;
    let cay = Cayley::build(&elems);
    let m = cay.m;
    let sig: Vec<[usize; 9]> = (0..m).into_par_iter().map(|a| cay.signature(a)).collect();
    let mut class_size: HashMap<[usize; 9], usize> = HashMap::new();
    for s in &sig {
        *class_size.entry(*s).or_default() += 1;
    }

    // Greedy generating set, rarest signatures first.
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&a| (class_size[&sig[a]], a));
    let mut gens = Vec::new();
    let mut inside = vec![false; m];
    for &a in &order {
        if !inside[a] {
            gens.push(a);
            inside = cay.closure(&gens);
        }
    }
    let candidates = gens.iter().map(|&g| (0..m).filter(|&b| sig[b] == sig[g]).collect()).collect();

    let mut search = Search {
        cay: &cay,
        gens,
        candidates,
        sig,
        image: vec![None; m],
        used: vec![false; m],
        assigned: Vec::new(),
        found: Vec::new(),
    };
    search.run(0);

    let mut tables = Vec::with_capacity(search.found.len());
    for perm in search.found {
        let images = perm.iter().map(|&b| elems[b].clone()).collect();
        tables.push(HomTable::new_unchecked(elems.clone(), images)?);
    }
    tables.sort_by(|a, b| a.images().cmp(b.images()));
    Ok(tables)
}
