//! Words in graph products: reduction, shuffle-canonical forms, and an
//! independent randomized reducer used as a cross-check.
//!
//! A syllable is `(vertex, element)`. Syllables at adjacent vertices commute;
//! two syllables at the same vertex merge when every syllable between them
//! commutes with that vertex.

use rand::seq::SliceRandom;
use rand::Rng as _;

use crate::graph::Graph;
use crate::report::CheckReport;
use crate::rng::Rng;

use super::vertex::VertexGroup;

pub type Syllable = (i64, i64);

fn commutes(graph: &Graph, u: i64, v: i64) -> bool {
    graph.adjacent(u, v)
}

/// Reduced form, keeping the original syllable order where possible; also
/// returns the number of merge steps taken.
pub fn reduce_counting(graph: &Graph, vg: &VertexGroup, word: &[Syllable]) -> (Vec<Syllable>, usize) {
    let mut out: Vec<Syllable> = Vec::with_capacity(word.len());
    let mut steps = 0;
    for &(v, h) in word {
        if vg.is_identity(h) {
            steps += 1;
            continue;
        }
        let mut merged = false;
        for j in (0..out.len()).rev() {
            let (u, k) = out[j];
            if u == v {
                let p = vg.mul(k, h);
                if vg.is_identity(p) {
                    out.remove(j);
                } else {
                    out[j].1 = p;
                }
                merged = true;
                steps += 1;
                break;
            }
            if !commutes(graph, u, v) {
                break;
            }
        }
        if !merged {
            out.push((v, h));
        }
    }
    (out, steps)
}

pub fn reduce(graph: &Graph, vg: &VertexGroup, word: &[Syllable]) -> Vec<Syllable> {
    reduce_counting(graph, vg, word).0
}

/// Shuffle-canonical representative of a reduced word: repeatedly emit the
/// least vertex among syllables that can be shuffled to the front.
pub fn shuffle_normal(graph: &Graph, reduced: &[Syllable]) -> Vec<Syllable> {
    let mut rest = reduced.to_vec();
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        let best = (0..rest.len())
            .filter(|&i| rest[..i].iter().all(|&(u, _)| u != rest[i].0 && commutes(graph, u, rest[i].0)))
            .min_by_key(|&i| rest[i].0)
            .expect("the first syllable is always available");
        out.push(rest.remove(best));
    }
    out
}

pub fn canonical(graph: &Graph, vg: &VertexGroup, word: &[Syllable]) -> Vec<Syllable> {
    shuffle_normal(graph, &reduce(graph, vg, word))
}

pub fn equal(graph: &Graph, vg: &VertexGroup, a: &[Syllable], b: &[Syllable]) -> bool {
    canonical(graph, vg, a) == canonical(graph, vg, b)
}

pub fn inverse(vg: &VertexGroup, word: &[Syllable]) -> Vec<Syllable> {
    word.iter().rev().map(|&(v, h)| (v, vg.inv(h))).collect()
}

/// Pairs `i < j` at one vertex whose in-between syllables all commute with it.
fn reducible_pairs(graph: &Graph, w: &[Syllable]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            let v = w[i].0;
            if w[j].0 == v {
                if w[i + 1..j].iter().all(|&(u, _)| commutes(graph, u, v)) {
                    out.push((i, j));
                }
                break;
            }
        }
    }
    out
}

/// Applies randomly chosen elementary moves (swap of adjacent commuting
/// syllables, merge of a reducible pair) until no reducible pair remains.
/// Returns the reduced word and the number of merges.
pub fn reduce_randomly(graph: &Graph, vg: &VertexGroup, word: &[Syllable], rng: &mut Rng) -> (Vec<Syllable>, usize) {
    let mut w: Vec<Syllable> = word.iter().copied().filter(|&(_, h)| !vg.is_identity(h)).collect();
    let mut steps = word.len() - w.len();
    loop {
        for _ in 0..rng.gen_range(0..=w.len()) {
            if w.len() < 2 {
                break;
            }
            let i = rng.gen_range(0..w.len() - 1);
            if w[i].0 != w[i + 1].0 && commutes(graph, w[i].0, w[i + 1].0) {
                w.swap(i, i + 1);
            }
        }
        let pairs = reducible_pairs(graph, &w);
        let Some(&(i, j)) = pairs.choose(rng) else { return (w, steps) };
        // Shuffle syllable j leftwards until it sits next to i.
        let mut k = j;
        while k > i + 1 {
            w.swap(k - 1, k);
            k -= 1;
        }
        let p = vg.mul(w[i].1, w[i + 1].1);
        w.remove(i + 1);
        if vg.is_identity(p) {
            w.remove(i);
        } else {
            w[i].1 = p;
        }
        steps += 1;
    }
}

pub fn is_reduced(graph: &Graph, vg: &VertexGroup, w: &[Syllable]) -> bool {
    w.iter().all(|&(_, h)| !vg.is_identity(h)) && reducible_pairs(graph, w).is_empty()
}

/// `v:k` syllables separated by whitespace; vertices named by `names[v]`.
pub fn render(w: &[Syllable], vg: &VertexGroup, name: impl Fn(i64) -> String) -> String {
    if w.is_empty() {
        return "e".into();
    }
    w.iter().map(|&(v, h)| format!("{}:{}", name(v), vg.render(h))).collect::<Vec<_>>().join(" ")
}

/// A random word of length `1..=max_len` over the given vertices, with
/// non-identity letters when the vertex group is finite.
pub fn random_word(vertices: &[i64], vg: &VertexGroup, max_len: usize, rng: &mut Rng) -> Vec<Syllable> {
    let len = rng.gen_range(1..=max_len.max(1));
    (0..len)
        .map(|_| {
            let v = *vertices.choose(rng).expect("at least one vertex");
            let h = match vg.order() {
                Some(n) if n > 1 => loop {
                    let k = rng.gen_range(0..n as i64);
                    if !vg.is_identity(k) {
                        break k;
                    }
                },
                Some(_) => vg.identity(),
                None => rng.gen_range(-3..=3),
            };
            (v, h)
        })
        .collect()
}

/// Every randomized reduction of each word lands on the same shuffle-canonical
/// form as the deterministic reducer.
pub fn check_normal_form_suite(graph: &Graph, vg: &VertexGroup, words: &[Vec<Syllable>], strategies: usize, rng: &mut Rng) -> CheckReport {
    let mut r = CheckReport::new(format!("normal forms agree across {strategies} reduction strategies"));
    let mut compared = 0usize;
    for (i, w) in words.iter().enumerate() {
        let reference = canonical(graph, vg, w);
        if !is_reduced(graph, vg, &reference) {
            r.violation(format!("word {i}: the deterministic result is not reduced"));
        }
        for s in 0..strategies {
            let (red, _) = reduce_randomly(graph, vg, w, rng);
            compared += 1;
            let form = shuffle_normal(graph, &red);
            if form != reference {
                r.violation(format!(
                    "word {i}, strategy {s}: {} vs {}",
                    render(&form, vg, |v| v.to_string()),
                    render(&reference, vg, |v| v.to_string())
                ));
            }
        }
    }
    r.note(format!("{} words, {compared} randomized reductions", words.len()));
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    const A: i64 = 0;
    const B: i64 = 1;
    const C: i64 = 2;

    #[test]
    fn reduction_examples_on_a_path() {
        let p3 = Graph::path(3);
        let z2 = VertexGroup::Cyclic(2);
        assert_eq!(reduce(&p3, &z2, &[]), vec![]);
        assert_eq!(reduce(&p3, &z2, &[(A, 1), (B, 1), (A, 1)]), vec![(B, 1)]);
        assert_eq!(reduce(&p3, &z2, &[(A, 1), (C, 1), (A, 1)]).len(), 3);
    }

    #[test]
    fn canonical_examples() {
        let p2 = Graph::path(2);
        let empty = Graph::range(2);
        let z2 = VertexGroup::Cyclic(2);
        assert_eq!(canonical(&p2, &z2, &[(B, 1), (A, 1)]), vec![(A, 1), (B, 1)]);
        assert_eq!(canonical(&empty, &z2, &[(B, 1), (A, 1)]), vec![(B, 1), (A, 1)]);
        assert!(equal(&p2, &z2, &[(A, 1), (B, 1)], &[(B, 1), (A, 1)]));
        assert!(!equal(&p2, &z2, &[(A, 1)], &[(A, 1), (A, 1)]));
    }

    #[test]
    fn randomized_reduction_agrees_on_p4() {
        let p4 = Graph::path(4);
        let z3 = VertexGroup::Cyclic(3);
        let mut rng = seeded(3, 0);
        for _ in 0..50 {
            let len = rng.gen_range(0..=20);
            let w: Vec<Syllable> = (0..len).map(|_| (rng.gen_range(0..4), rng.gen_range(0..3))).collect();
            let (r, steps) = reduce_counting(&p4, &z3, &w);
            assert!(steps <= w.len());
            assert!(is_reduced(&p4, &z3, &r));
            let c = shuffle_normal(&p4, &r);
            for _ in 0..5 {
                let (r2, s2) = reduce_randomly(&p4, &z3, &w, &mut rng);
                assert!(s2 <= w.len());
                assert_eq!(shuffle_normal(&p4, &r2), c);
            }
            assert_eq!(canonical(&p4, &z3, &c), c);
        }
    }

    #[test]
    fn randomized_reductions_agree() {
        let p4 = Graph::path(4);
        let z3 = VertexGroup::Cyclic(3);
        let mut rng = seeded(3, 0);
        let words: Vec<_> = (0..20).map(|_| random_word(&[0, 1, 2, 3], &z3, 12, &mut rng)).collect();
        assert!(words.iter().all(|w| w.iter().all(|&(_, h)| h != 0)));
        let r = check_normal_form_suite(&p4, &z3, &words, 5, &mut rng);
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(r.notes[0], "20 words, 100 randomized reductions");
    }
}
