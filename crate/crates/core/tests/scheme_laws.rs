//! Fixed-point laws, permutation equivariance and locality of the
//! message-passing schemes.

use std::collections::VecDeque;

use rand::Rng as _;
use simplex_embed_core::message_passing::{
    amps_layer, cmps_layer, cxn_encode, hcmps_layer, CxnParams, FeatureSet, LayerParams, Scheme,
};
use simplex_embed_core::numerics::{glorot_uniform, streams, Rng, RngState};
use simplex_embed_core::{DenseMatrix, Simplex, SimplicialComplex};

fn rng(index: u64) -> Rng {
    RngState::new(2024).stream(streams::id(streams::FIXTURE, index))
}

fn random_complex(rng: &mut Rng, vertices: usize, max_size: usize, count: usize) -> SimplicialComplex {
    let maximal: Vec<Vec<usize>> = (0..count)
        .map(|_| {
            let size = rng.gen_range(1..=max_size);
            let mut s: Vec<usize> = (0..size).map(|_| rng.gen_range(0..vertices)).collect();
            s.sort_unstable();
            s.dedup();
            s
        })
        .collect();
    SimplicialComplex::build(&maximal, None).unwrap()
}

fn random_features(x: &SimplicialComplex, width: usize, rng: &mut Rng) -> FeatureSet {
    let dims = (0..=x.dim())
        .map(|m| {
            let mut h = DenseMatrix::zeros(x.count(m), width);
            for v in h.as_mut_slice() {
                *v = rng.gen_range(-1.0..1.0);
            }
            h
        })
        .collect();
    FeatureSet::new(x, dims).unwrap()
}

fn layer(scheme: Scheme) -> fn(&SimplicialComplex, &FeatureSet, &LayerParams) -> simplex_embed_core::Result<FeatureSet> {
    match scheme {
        Scheme::Amps => amps_layer,
        Scheme::Cmps => cmps_layer,
        Scheme::Hcmps => hcmps_layer,
    }
}

fn bits(m: &DenseMatrix) -> Vec<u64> {
    m.as_slice().iter().map(|v| v.to_bits()).collect()
}

#[test]
fn amps_never_updates_top_cells_and_cmps_never_updates_vertices() {
    for (scheme, frozen) in [(Scheme::Amps, None), (Scheme::Cmps, Some(0))] {
        for draw in 0..100u64 {
            let mut r = rng(draw);
            let x = random_complex(&mut r, 10, 4, 6);
            let n = x.dim();
            let h = random_features(&x, 3, &mut r);
            let scale: f64 = r.gen_range(0.1..5.0);
            let params = LayerParams::build(scheme, n, &h.widths(), 5, |a, b| glorot_uniform(a, b, &mut r).scale(scale)).unwrap();
            let out = layer(scheme)(&x, &h, &params).unwrap();
            let m = frozen.unwrap_or(n);
            assert_eq!(bits(out.get(m)), bits(h.get(m)), "{scheme:?} draw {draw}");
        }
    }
}

fn relabel(s: &Simplex, perm: &[usize]) -> Simplex {
    Simplex::new(s.vertices().iter().map(|&v| perm[v]).collect()).unwrap()
}

#[test]
fn hcmps_is_permutation_equivariant() {
    for draw in 0..20u64 {
        let mut r = rng(1000 + draw);
        let x = random_complex(&mut r, 9, 4, 5);
        let mut perm: Vec<usize> = (0..9).collect();
        for i in (1..perm.len()).rev() {
            perm.swap(i, r.gen_range(0..=i));
        }
        let maximal: Vec<Vec<usize>> =
            x.maximal_simplices().iter().map(|s| relabel(s, &perm).vertices().to_vec()).collect();
        let y = SimplicialComplex::build(&maximal, None).unwrap();
        assert_eq!(x.counts(), y.counts());

        let hx = random_features(&x, 3, &mut r);
        let dims = (0..=x.dim())
            .map(|m| {
                let mut h = DenseMatrix::zeros(y.count(m), 3);
                for (i, s) in x.simplices_of_dim(m).iter().enumerate() {
                    let j = y.local_index(&relabel(s, &perm)).unwrap();
                    h.row_mut(j).copy_from_slice(hx.get(m).row(i));
                }
                h
            })
            .collect();
        let hy = FeatureSet::new(&y, dims).unwrap();
        let params = CxnParams::init(&x, Scheme::Hcmps, &hx.widths(), 4, 2, &mut r).unwrap();
        let ux = cxn_encode(&x, &hx, &params).unwrap();
        let uy = cxn_encode(&y, &hy, &params).unwrap();
        for (g, s) in x.simplices().iter().enumerate() {
            let g2 = y.global_index(&relabel(s, &perm)).unwrap();
            for (a, b) in ux.row(g).iter().zip(uy.row(g2)) {
                assert!((a - b).abs() <= 1e-12 * (1.0 + a.abs()), "draw {draw}, simplex {s}: {a} vs {b}");
            }
        }
    }
}

/// Simplices whose features can reach `target` in one layer.
fn sources(x: &SimplicialComplex, scheme: Scheme, target: usize) -> Vec<usize> {
    let s = x.simplex(target);
    let m = s.dim();
    let n = x.dim();
    let same_dim = x.range(m).filter(|&g| g != target);
    match scheme {
        Scheme::Amps if m < n => same_dim
            .filter(|&g| !x.co_intersection(s, x.simplex(g)).unwrap().is_empty())
            .chain(x.cofacet_ids(target).iter().copied())
            .collect(),
        Scheme::Cmps if m > 0 => same_dim
            .filter(|&g| !x.facet_intersection(s, x.simplex(g)).unwrap().is_empty())
            .chain(x.facet_ids(target).iter().copied())
            .collect(),
        Scheme::Hcmps => x.facet_ids(target).iter().chain(x.cofacet_ids(target)).copied().collect(),
        _ => Vec::new(),
    }
}

fn distances_to(x: &SimplicialComplex, scheme: Scheme, target: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; x.len()];
    dist[target] = Some(0);
    let mut queue = VecDeque::from([target]);
    while let Some(t) = queue.pop_front() {
        let d = dist[t].unwrap();
        for s in sources(x, scheme, t) {
            if dist[s].is_none() {
                dist[s] = Some(d + 1);
                queue.push_back(s);
            }
        }
    }
    dist
}

#[test]
fn far_features_do_not_reach_the_target() {
    let mut checked = 0;
    for scheme in [Scheme::Amps, Scheme::Cmps, Scheme::Hcmps] {
        for draw in 0..15u64 {
            let mut r = rng(5000 + draw);
            // A long strip of triangles has plenty of simplices far from either end.
            let strip: Vec<Vec<usize>> = (0..8).map(|i| vec![i, i + 1, i + 2]).collect();
            let x = if draw % 2 == 0 { SimplicialComplex::build(&strip, None).unwrap() } else { random_complex(&mut r, 14, 3, 10) };
            let layers = 1 + (draw as usize % 3);
            let h = random_features(&x, 3, &mut r);
            let params = CxnParams::init(&x, scheme, &h.widths(), 4, layers, &mut r).unwrap();
            let u = cxn_encode(&x, &h, &params).unwrap();
            let embedded = scheme.embedded_dims(x.dim());
            let targets: Vec<usize> = (0..x.len()).filter(|&g| embedded.contains(&x.simplex(g).dim())).collect();
            for &target in &targets {
                let dist = distances_to(&x, scheme, target);
                let far: Vec<usize> = (0..x.len()).filter(|&g| dist[g].map_or(true, |d| d > layers)).collect();
                if far.is_empty() {
                    continue;
                }
                let dims = (0..=x.dim())
                    .map(|m| {
                        let mut hm = h.get(m).clone();
                        for &g in far.iter().filter(|&&g| x.simplex(g).dim() == m) {
                            hm.row_mut(g - x.offset(m)).fill(0.0);
                        }
                        hm
                    })
                    .collect();
                let zeroed = FeatureSet::new(&x, dims).unwrap();
                let v = cxn_encode(&x, &zeroed, &params).unwrap();
                let row = target - targets[0];
                assert_eq!(
                    u.row(row).iter().map(|a| a.to_bits()).collect::<Vec<_>>(),
                    v.row(row).iter().map(|a| a.to_bits()).collect::<Vec<_>>(),
                    "{scheme:?}, L={layers}, target {}",
                    x.simplex(target)
                );
                checked += 1;
            }
        }
    }
    assert!(checked > 100, "only {checked} targets had distant simplices");
}
