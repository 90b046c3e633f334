//! Brute-force reference implementations shared by the integration tests.
//! Nothing here calls into the crate's neighborhood code.

#![allow(dead_code)]

use std::collections::BTreeSet;

/// All faces of the given simplices, sorted by dimension, then lexicographically.
pub fn closure(maximal: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut all = BTreeSet::new();
    for s in maximal {
        let mut v = s.clone();
        v.sort_unstable();
        v.dedup();
        for mask in 1u32..(1 << v.len()) {
            let face: Vec<usize> = v.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &x)| x).collect();
            all.insert(face);
        }
    }
    let mut out: Vec<Vec<usize>> = all.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

pub fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|v| big.contains(v))
}

/// `|CO[a, b]|`: simplices one dimension up containing both.
pub fn common_cofacets(all: &[Vec<usize>], a: &[usize], b: &[usize]) -> u32 {
    all.iter().filter(|t| t.len() == a.len() + 1 && is_subset(a, t) && is_subset(b, t)).count() as u32
}

/// `|C[a, b]|`: simplices one dimension down contained in both.
pub fn common_facets(all: &[Vec<usize>], a: &[usize], b: &[usize]) -> u32 {
    all.iter().filter(|f| f.len() + 1 == a.len() && is_subset(f, a) && is_subset(f, b)).count() as u32
}

pub fn of_dim(all: &[Vec<usize>], k: usize) -> Vec<Vec<usize>> {
    all.iter().filter(|s| s.len() == k + 1).cloned().collect()
}

/// Dense same-dimension relation matrix over `simplices`, zero diagonal.
pub fn relation(simplices: &[Vec<usize>], count: impl Fn(&[usize], &[usize]) -> u32) -> Vec<Vec<u32>> {
    simplices
        .iter()
        .enumerate()
        .map(|(i, a)| {
            simplices.iter().enumerate().map(|(j, b)| if i == j { 0 } else { count(a, b) }).collect()
        })
        .collect()
}

/// Block-diagonal assembly of relation matrices over consecutive dimension blocks.
pub fn block_relation(blocks: &[Vec<Vec<usize>>], count: impl Fn(&[usize], &[usize]) -> u32) -> Vec<Vec<u32>> {
    let flat: Vec<&Vec<usize>> = blocks.iter().flatten().collect();
    flat.iter()
        .enumerate()
        .map(|(i, a)| {
            flat.iter()
                .enumerate()
                .map(|(j, b)| if i == j || a.len() != b.len() { 0 } else { count(a, b) })
                .collect()
        })
        .collect()
}
