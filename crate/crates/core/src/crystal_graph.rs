//! The reduced crystal: weights of `V(Λ)` joined by residue-labelled edges.
//!
//! Two weights `c` and `c + e_i` are joined by an `i`-edge exactly when both
//! are members. Along the `α_i` direction the members form unbroken strings,
//! so this weight-level rule reproduces the reduced crystal without any
//! multiplicities.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::membership::in_p;
use crate::root_system::{Content, HighestWeight, Hub};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexInfo {
    pub hub: Hub,
    pub defect: i64,
    pub degree: i64,
}

/// Vertices of `P(Λ)` up to a degree cap, sorted by content.
#[derive(Debug, Clone)]
pub struct CrystalGraph {
    lambda: HighestWeight,
    max_degree: i64,
    vertices: BTreeMap<Content, VertexInfo>,
    edges: BTreeSet<(Content, usize)>,
}

impl CrystalGraph {
    /// Builds the graph shell by shell: every member other than `Λ` has an
    /// upward neighbour, so degree `n + 1` is covered by the neighbours of
    /// degree `n`.
    pub fn enumerate(lambda: &HighestWeight, max_degree: i64) -> Result<Self> {
        let e = lambda.e();
        let mut vertices = BTreeMap::new();
        let mut shell = vec![Content::zero(e)];
        let mut degree = 0;
        while degree <= max_degree && !shell.is_empty() {
            for c in &shell {
                vertices.insert(
                    c.clone(),
                    VertexInfo {
                        hub: lambda.hub(c),
                        defect: lambda.defect(c),
                        degree,
                    },
                );
            }
            if degree == max_degree {
                break;
            }
            let candidates: BTreeSet<Content> = shell
                .iter()
                .flat_map(|c| (0..e).map(move |i| c.shifted(i, 1)))
                .collect();
            let candidates: Vec<Content> = candidates.into_iter().collect();
            let keep = candidates
                .par_iter()
                .map(|c| in_p(lambda, c))
                .collect::<Result<Vec<bool>>>()?;
            shell = candidates
                .into_iter()
                .zip(keep)
                .filter_map(|(c, k)| k.then_some(c))
                .collect();
            degree += 1;
        }

        let edges = vertices
            .keys()
            .flat_map(|c| (0..e).map(move |i| (c, i)))
            .filter(|(c, i)| vertices.contains_key(&c.shifted(*i, 1)))
            .map(|(c, i)| (c.clone(), i))
            .collect();

        Ok(CrystalGraph {
            lambda: lambda.clone(),
            max_degree,
            vertices,
            edges,
        })
    }

    pub fn lambda(&self) -> &HighestWeight {
        &self.lambda
    }

    pub fn max_degree(&self) -> i64 {
        self.max_degree
    }

    pub fn vertices(&self) -> impl Iterator<Item = (&Content, &VertexInfo)> {
        self.vertices.iter()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex(&self, c: &Content) -> Option<&VertexInfo> {
        self.vertices.get(c)
    }

    pub fn contains(&self, c: &Content) -> bool {
        self.vertices.contains_key(c)
    }

    /// Edges `(c, i)` from `c` to `c + e_i`, ordered by `(c, i)`.
    pub fn edges(&self) -> impl Iterator<Item = &(Content, usize)> {
        self.edges.iter()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, c: &Content, i: usize) -> bool {
        self.edges.contains(&(c.clone(), i))
    }

    /// Vertex counts per degree, index = degree.
    pub fn degree_profile(&self) -> Vec<usize> {
        let mut counts = vec![0; usize::try_from(self.max_degree + 1).unwrap_or(0)];
        for info in self.vertices.values() {
            counts[info.degree as usize] += 1;
        }
        counts
    }

    pub fn defect_stratum(&self, d: i64) -> impl Iterator<Item = (&Content, &VertexInfo)> {
        self.vertices.iter().filter(move |(_, v)| v.defect == d)
    }

    /// The maximal `i`-string through `c`, from its top (lowest degree) to its
    /// bottom. Membership is tested directly, so the string may leave the
    /// enumerated degree range.
    pub fn i_string(&self, c: &Content, i: usize) -> Result<Vec<Content>> {
        if !self.contains(c) {
            return Err(Error::VertexNotFound(c.0.clone()));
        }
        let mut top = c.clone();
        loop {
            let up = top.shifted(i, -1);
            if !in_p(&self.lambda, &up)? {
                break;
            }
            top = up;
        }
        let mut string = vec![top];
        loop {
            let down = string.last().unwrap().shifted(i, 1);
            if !in_p(&self.lambda, &down)? {
                break;
            }
            string.push(down);
        }
        Ok(string)
    }
}

/// `c` is `i`-external when it has no `i`-edge on the side selected by the
/// sign of `θ_i`: upward for `θ_i > 0`, downward for `θ_i < 0`. With
/// `θ_i = 0` no condition applies.
pub fn is_i_external(lambda: &HighestWeight, c: &Content, i: usize) -> Result<bool> {
    if !in_p(lambda, c)? {
        return Err(Error::NotAMember(c.0.clone()));
    }
    let theta = lambda.hub(c)[i];
    Ok(match theta.signum() {
        1 => !in_p(lambda, &c.shifted(i, -1))?,
        -1 => !in_p(lambda, &c.shifted(i, 1))?,
        _ => true,
    })
}

/// External for every residue.
pub fn is_external(lambda: &HighestWeight, c: &Content) -> Result<bool> {
    for i in 0..lambda.e() {
        if !is_i_external(lambda, c, i)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionViolation {
    pub content: Content,
    pub residue: usize,
    pub defect: i64,
    pub theta: i64,
}

/// Every vertex with `defect ≤ |θ_i|` must be `i`-external; returns the
/// vertices where that fails.
pub fn check_external_criterion(graph: &CrystalGraph) -> Result<Vec<CriterionViolation>> {
    let lambda = graph.lambda();
    let work: Vec<(&Content, &VertexInfo, usize)> = graph
        .vertices()
        .flat_map(|(c, v)| (0..lambda.e()).map(move |i| (c, v, i)))
        .filter(|(_, v, i)| v.defect <= v.hub[*i].abs())
        .collect();
    let verdicts = work
        .par_iter()
        .map(|(c, _, i)| is_i_external(lambda, c, *i))
        .collect::<Result<Vec<bool>>>()?;
    Ok(work
        .into_iter()
        .zip(verdicts)
        .filter(|(_, ok)| !ok)
        .map(|((c, v, i), _)| CriterionViolation {
            content: c.clone(),
            residue: i,
            defect: v.defect,
            theta: v.hub[i],
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub content: Content,
    pub word: Vec<usize>,
}

/// Greedy string reflection: while some `θ_i < 0` has `θ_i ≤ -defect`, the
/// weight sits at the high-degree end of its `i`-string, so reflect there.
/// Picks the largest degree drop, ties to the smallest residue.
pub fn reduce_weight(lambda: &HighestWeight, c: &Content) -> Result<Reduction> {
    if !in_p(lambda, c)? {
        return Err(Error::NotAMember(c.0.clone()));
    }
    let defect = lambda.defect(c);
    let mut content = c.clone();
    let mut word = Vec::new();
    loop {
        let hub = lambda.hub(&content);
        let best = hub
            .0
            .iter()
            .enumerate()
            .filter(|&(_, &t)| t < 0 && t <= -defect)
            .min_by_key(|&(i, &t)| (t, i));
        match best {
            Some((i, &t)) => {
                content = content.shifted(i, t);
                word.push(i);
            }
            None => return Ok(Reduction { content, word }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::membership::is_max;

    fn lam(a: &[i64]) -> HighestWeight {
        HighestWeight::new(a.to_vec()).unwrap()
    }

    fn c(v: &[i64]) -> Content {
        Content(v.to_vec())
    }

    // All non-negative contents of degree ≤ max, filtered by the oracle.
    fn brute_force(l: &HighestWeight, max: i64) -> Vec<Content> {
        let e = l.e();
        let mut out = Vec::new();
        let mut v = vec![0i64; e];
        loop {
            let cont = Content(v.clone());
            if cont.degree() <= max && in_p(l, &cont).unwrap() {
                out.push(cont);
            }
            let mut k = 0;
            while k < e && v[k] == max {
                v[k] = 0;
                k += 1;
            }
            if k == e {
                break;
            }
            v[k] += 1;
        }
        out.sort();
        out
    }

    #[test]
    fn enumerate_examples() {
        let g = CrystalGraph::enumerate(&lam(&[2, 1]), 0).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);

        let g = CrystalGraph::enumerate(&lam(&[2, 1]), 2).unwrap();
        let got: Vec<Content> = g.vertices().map(|(c, _)| c.clone()).collect();
        assert_eq!(got, vec![c(&[0, 0]), c(&[0, 1]), c(&[1, 0]), c(&[1, 1]), c(&[2, 0])]);
        assert_eq!(got, brute_force(&lam(&[2, 1]), 2));

        let g = CrystalGraph::enumerate(&lam(&[1, 0]), 2).unwrap();
        let got: Vec<Content> = g.vertices().map(|(c, _)| c.clone()).collect();
        assert_eq!(got, vec![c(&[0, 0]), c(&[1, 0]), c(&[1, 1])]);
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for (a, max) in [
            (vec![2, 1], 14),
            (vec![1, 1], 12),
            (vec![1, 1, 1], 8),
            (vec![2, 0, 1], 7),
            (vec![1, 0, 0, 1], 6),
        ] {
            let l = HighestWeight::new(a).unwrap();
            let g = CrystalGraph::enumerate(&l, max).unwrap();
            let got: Vec<Content> = g.vertices().map(|(c, _)| c.clone()).collect();
            assert_eq!(got, brute_force(&l, max));
        }
    }

    #[test]
    fn graph_invariants() {
        for (a, max) in [(vec![2, 1], 16), (vec![1, 1, 1], 9), (vec![0, 2, 1], 8)] {
            let l = HighestWeight::new(a).unwrap();
            let e = l.e();
            let g = CrystalGraph::enumerate(&l, max).unwrap();
            for (cont, info) in g.vertices() {
                assert_eq!(info.hub, l.hub(cont));
                assert_eq!(info.defect, l.defect(cont));
                assert!(info.defect >= 0);
                assert_eq!(info.degree, cont.degree());
                if info.degree > 0 {
                    assert!((0..e).any(|i| g.has_edge(&cont.shifted(i, -1), i)), "{cont}");
                }
                for i in 0..e {
                    let down = cont.shifted(i, 1);
                    let member = in_p(&l, &down).unwrap();
                    if down.degree() <= max {
                        assert_eq!(g.has_edge(cont, i), member);
                    }
                    let r = l.reflect(cont, i);
                    assert!(in_p(&l, &r).unwrap());
                    if r.degree() <= max {
                        assert!(g.contains(&r));
                    }
                }
            }
            for (from, i) in g.edges() {
                assert!(g.contains(from) && g.contains(&from.shifted(*i, 1)));
            }
        }
    }

    #[test]
    fn i_string_examples() {
        let g = CrystalGraph::enumerate(&lam(&[2, 1]), 4).unwrap();
        assert_eq!(
            g.i_string(&c(&[0, 0]), 0).unwrap(),
            vec![c(&[0, 0]), c(&[1, 0]), c(&[2, 0])]
        );
        assert_eq!(g.i_string(&c(&[0, 0]), 1).unwrap(), vec![c(&[0, 0]), c(&[0, 1])]);
        assert_eq!(g.i_string(&c(&[9, 9]), 0), Err(Error::VertexNotFound(vec![9, 9])));

        // (1,0) is the middle of the 0-string from Λ.
        let g = CrystalGraph::enumerate(&lam(&[2, 1]), 1).unwrap();
        let s = g.i_string(&c(&[1, 0]), 0).unwrap();
        assert_eq!(s, vec![c(&[0, 0]), c(&[1, 0]), c(&[2, 0])]);
        let g0 = CrystalGraph::enumerate(&lam(&[0, 2]), 3).unwrap();
        assert_eq!(g0.i_string(&c(&[0, 0]), 0).unwrap(), vec![c(&[0, 0])]);
    }

    #[test]
    fn strings_have_expected_shape() {
        for (a, max) in [(vec![2, 1], 14), (vec![1, 1, 1], 8)] {
            let l = HighestWeight::new(a).unwrap();
            let g = CrystalGraph::enumerate(&l, max).unwrap();
            for (cont, _) in g.vertices() {
                for i in 0..l.e() {
                    let s = g.i_string(cont, i).unwrap();
                    let top = &s[0];
                    let w = l.hub(top)[i];
                    assert!(w >= 0);
                    assert_eq!(s.len() as i64, w + 1);
                    assert_eq!(&l.reflect(top, i), s.last().unwrap());
                    let defects: Vec<i64> = s.iter().map(|x| l.defect(x)).collect();
                    let mut rev = defects.clone();
                    rev.reverse();
                    assert_eq!(defects, rev);
                    for (k, d) in defects.iter().enumerate() {
                        let k = k as i64;
                        assert_eq!(*d, defects[0] + k * (w - k));
                    }
                }
            }
        }
    }

    #[test]
    fn externality_examples() {
        let l = lam(&[2, 1]);
        assert!(is_i_external(&l, &c(&[0, 0]), 0).unwrap());
        assert!(!is_i_external(&l, &c(&[2, 1]), 1).unwrap());
        assert!(is_max(&l, &c(&[2, 0])).unwrap());
        assert_eq!(l.hub(&c(&[10, 15])), Hub(vec![12, -9]));
        assert_eq!(l.defect(&c(&[10, 15])), 10);
        assert!(!is_i_external(&l, &c(&[10, 15]), 1).unwrap());
        assert_eq!(l.defect(&c(&[10, 16])), 0);
        assert!(in_p(&l, &c(&[10, 16])).unwrap());
        assert_eq!(is_i_external(&l, &c(&[0, 2]), 0), Err(Error::NotAMember(vec![0, 2])));
        assert!(is_external(&l, &c(&[0, 0])).unwrap());
    }

    #[test]
    fn externality_matches_edges() {
        let l = lam(&[1, 1, 1]);
        let g = CrystalGraph::enumerate(&l, 8).unwrap();
        for (cont, info) in g.vertices() {
            for i in 0..l.e() {
                let theta = info.hub[i];
                let ext = is_i_external(&l, cont, i).unwrap();
                if theta > 0 {
                    assert_eq!(ext, !g.has_edge(&cont.shifted(i, -1), i));
                } else if theta < 0 && info.degree < g.max_degree() {
                    assert_eq!(ext, !g.has_edge(cont, i));
                } else if theta == 0 {
                    assert!(ext);
                }
            }
        }
    }

    #[test]
    fn criterion_holds_on_small_graphs() {
        for (a, max) in [(vec![2, 1], 10), (vec![1, 0], 12), (vec![1, 1, 1], 8)] {
            let g = CrystalGraph::enumerate(&HighestWeight::new(a).unwrap(), max).unwrap();
            assert!(check_external_criterion(&g).unwrap().is_empty());
        }
    }

    #[test]
    fn reduce_examples() {
        let l = lam(&[2, 1]);
        let r = reduce_weight(&l, &c(&[1, 3])).unwrap();
        assert_eq!(r.content, c(&[1, 0]));
        assert_eq!(r.word, vec![1]);

        let r = reduce_weight(&l, &c(&[2, 1])).unwrap();
        assert_eq!(r.content, c(&[2, 1]));
        assert!(r.word.is_empty());

        assert_eq!(reduce_weight(&l, &c(&[0, 2])), Err(Error::NotAMember(vec![0, 2])));
    }

    #[test]
    fn reduction_keeps_defect_and_lowers_degree() {
        let l = lam(&[1, 1, 1]);
        let g = CrystalGraph::enumerate(&l, 10).unwrap();
        for (cont, info) in g.vertices() {
            let r = reduce_weight(&l, cont).unwrap();
            assert_eq!(l.defect(&r.content), info.defect);
            assert!(r.content.degree() <= info.degree);
            assert!(in_p(&l, &r.content).unwrap());
            let hub = l.hub(&r.content);
            assert!(hub.0.iter().all(|&t| t >= 0 || t > -info.defect));
        }
    }
}
