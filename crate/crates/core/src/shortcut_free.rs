//! Splitting null words of a free group into two null cyclic halves with
//! `min(|u1|, |u2|) >= floor(|u|/3)`, via cancellation trees and centroid
//! decomposition.
//!
//! A null word `u` of a free group is the boundary walk of a planar tree
//! whose edges are its cancelling letter pairs: the walk traverses each
//! edge twice, once per direction, reading `u` from a base vertex. The
//! tree has `|u|/2` edges and `|u|/2 + 1` vertices. Removing a centroid
//! vertex leaves components of at most half the vertices, and the walk
//! decomposes at the centroid into one null excursion per component; the
//! excursions are then coalesced down to two pieces with the stated bound.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::words::{Letter, Word};
use crate::{Error, Result};

/// One edge of a cancellation tree, directed away from the base. The
/// boundary walk reads `label` when traversing `from -> to` and its
/// inverse on the way back.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeEdge {
    pub from: usize,
    pub to: usize,
    pub label: Letter,
}

/// One step of the boundary walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WalkStep {
    pub edge: usize,
    pub outward: bool,
}

/// The planar tree read around by a null word. Vertex 0 is the base;
/// vertices are numbered in discovery order, which is the planar
/// (left-to-right) order of children consistent with the word.
#[derive(Debug, Clone)]
pub struct CancellationTree {
    alphabet: Arc<crate::group::MarkedAlphabet>,
    edges: Vec<TreeEdge>,
    walk: Vec<WalkStep>,
    /// Vertex the walk sits at before letter `i`; entry `|u|` equals
    /// entry 0 (the base).
    gaps: Vec<usize>,
}

impl CancellationTree {
    pub fn vertex_count(&self) -> usize {
        self.edges.len() + 1
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[TreeEdge] {
        &self.edges
    }

    pub fn walk(&self) -> &[WalkStep] {
        &self.walk
    }

    pub fn vertex_at_gap(&self, i: usize) -> usize {
        self.gaps[i]
    }

    /// Reads the boundary walk back into the word that built the tree.
    pub fn read_word(&self) -> Word {
        let letters = self
            .walk
            .iter()
            .map(|step| {
                let label = self.edges[step.edge].label;
                if step.outward {
                    label
                } else {
                    label.inverse()
                }
            })
            .collect();
        Word::from_letters(letters, Arc::clone(&self.alphabet)).expect("labels from this alphabet")
    }

    /// Subtree sizes rooted at the base. Children always carry larger
    /// indices than their parents, so one reverse pass suffices.
    fn subtree_sizes(&self) -> Vec<usize> {
        let mut size = vec![1usize; self.vertex_count()];
        for e in self.edges.iter().rev() {
            size[e.from] += size[e.to];
        }
        size
    }

    /// Plain-text DOT rendering; the base is doubly circled and an
    /// optional vertex (typically the centroid) is highlighted.
    pub fn to_dot(&self, highlight: Option<usize>) -> String {
        let mut out = String::from("digraph cancellation_tree {\n");
        for v in 0..self.vertex_count() {
            let mut attrs = vec![format!("label=\"{v}\"")];
            if v == 0 {
                attrs.push("shape=doublecircle".to_string());
            }
            if highlight == Some(v) {
                attrs.push("style=filled".to_string());
                attrs.push("fillcolor=lightblue".to_string());
            }
            let _ = writeln!(out, "  v{v} [{}];", attrs.join(", "));
        }
        for e in &self.edges {
            let tmp = Word::from_letters(vec![e.label], Arc::clone(&self.alphabet))
                .expect("label from this alphabet");
            let _ = writeln!(out, "  v{} -> v{} [label=\"{}\"];", e.from, e.to, tmp.format());
        }
        out.push_str("}\n");
        out
    }
}

/// Builds the cancellation tree of a null word by a last-in-first-out
/// scan: push each letter; when the incoming letter inverts the most
/// recent unmatched one, the pair closes one tree edge. Fails with
/// `NotNull` when letters remain unmatched, i.e. the word is not null in
/// the free group on its own symbols.
pub fn cancellation_tree(u: &Word) -> Result<CancellationTree> {
    let mut edges: Vec<TreeEdge> = Vec::with_capacity(u.len() / 2);
    let mut walk: Vec<WalkStep> = Vec::with_capacity(u.len());
    let mut gaps: Vec<usize> = Vec::with_capacity(u.len() + 1);
    let mut stack: Vec<usize> = Vec::new();
    let mut current = 0usize;
    let mut vertices = 1usize;
    gaps.push(current);

    for &letter in u.letters() {
        let closes = stack
            .last()
            .is_some_and(|&e| edges[e].label.inverse() == letter);
        if closes {
            let e = stack.pop().expect("just checked");
            walk.push(WalkStep { edge: e, outward: false });
            current = edges[e].from;
        } else {
            let e = edges.len();
            edges.push(TreeEdge { from: current, to: vertices, label: letter });
            walk.push(WalkStep { edge: e, outward: true });
            stack.push(e);
            current = vertices;
            vertices += 1;
        }
        gaps.push(current);
    }

    if !stack.is_empty() {
        return Err(Error::NotNull);
    }
    Ok(CancellationTree { alphabet: Arc::clone(u.alphabet()), edges, walk, gaps })
}

/// A vertex whose removal leaves components of at most `N/2` vertices.
/// When several qualify, the one minimizing (max component size, vertex
/// index) is returned.
pub fn centroid(tree: &CancellationTree) -> usize {
    let n = tree.vertex_count();
    let size = tree.subtree_sizes();
    let mut max_component = vec![0usize; n];
    for v in 1..n {
        max_component[v] = n - size[v];
    }
    for e in tree.edges() {
        max_component[e.from] = max_component[e.from].max(size[e.to]);
    }
    let best = (0..n)
        .min_by_key(|&v| (max_component[v], v))
        .expect("trees are nonempty");
    debug_assert!(2 * max_component[best] <= n);
    best
}

/// The walk of a null word, rotated to the centroid and cut at every
/// centroid visit: one null piece per component hanging at the centroid.
#[derive(Debug, Clone)]
pub struct CentroidExcursions {
    /// Rotation taking `u` to the first centroid visit in walk order.
    pub rotation: usize,
    pub centroid: usize,
    pub pieces: Vec<Word>,
}

/// Cuts the boundary walk at the centroid. Each piece is a complete
/// traversal of one subtree hanging there, so it is null and has at most
/// `|u|/2 + 1` letters.
pub fn centroid_excursions(u: &Word) -> Result<CentroidExcursions> {
    let tree = cancellation_tree(u)?;
    if u.is_empty() {
        return Ok(CentroidExcursions { rotation: 0, centroid: 0, pieces: Vec::new() });
    }
    let center = centroid(&tree);
    let n = u.len();
    let rotation = (0..n)
        .find(|&i| tree.vertex_at_gap(i) == center)
        .expect("every vertex is visited");
    let rotated = u.cyclic_conjugate(rotation).expect("in range");

    let mut pieces = Vec::new();
    let mut start = 0usize;
    for j in 1..=n {
        let at_center = tree.vertex_at_gap((rotation + j) % n) == center || j == n;
        if at_center {
            pieces.push(rotated.cyclic_subword(start, j - start).expect("in range"));
            start = j;
        }
    }
    debug_assert!(pieces.iter().all(|p| p.len() <= n / 2 + 1));
    debug_assert_eq!(pieces.iter().map(Word::len).sum::<usize>(), n);
    Ok(CentroidExcursions { rotation, centroid: center, pieces })
}

/// Result of [`split_null_word`]: `cyclic_conjugate(u, rotation)` equals
/// `first ++ second`, both parts are null, and
/// `min(|first|, |second|) >= floor(|u|/3)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NullSplit {
    pub rotation: usize,
    pub first: Word,
    pub second: Word,
}

impl NullSplit {
    pub fn min_len(&self) -> usize {
        self.first.len().min(self.second.len())
    }
}

/// Splits a null word into two null cyclic halves.
///
/// Procedure: cut the walk at a centroid of the cancellation tree; then,
/// while more than three pieces remain, either coalesce the first two
/// (when together they are at most `|u|/2` letters) or merge everything
/// past the second piece and stop. Of the resulting pieces the longest
/// becomes `first` and the remainder, in cyclic order, becomes `second`.
/// No rebalancing beyond that is attempted.
pub fn split_null_word(u: &Word) -> Result<NullSplit> {
    let empty = Word::empty(Arc::clone(u.alphabet()));
    if u.is_empty() {
        return Ok(NullSplit { rotation: 0, first: u.clone(), second: empty });
    }
    let excursions = centroid_excursions(u)?;
    let rotation = excursions.rotation;
    let mut pieces = excursions.pieces;
    assert!(
        u.len() <= 2 || pieces.len() >= 2,
        "centroid of a tree with >= 3 vertices cannot be a leaf"
    );

    let half = u.len() / 2;
    while pieces.len() > 2 {
        if pieces[0].len() + pieces[1].len() <= half {
            let merged = pieces[0].concat(&pieces[1]).expect("same alphabet");
            pieces.splice(0..2, [merged]);
        } else {
            let tail = pieces[2..]
                .iter()
                .try_fold(empty.clone(), |acc, p| acc.concat(p))
                .expect("same alphabet");
            pieces.truncate(2);
            pieces.push(tail);
            break;
        }
    }

    let split = match pieces.len() {
        1 => NullSplit { rotation, first: pieces.pop().expect("one piece"), second: empty },
        2 => {
            let second = pieces.pop().expect("two pieces");
            let first = pieces.pop().expect("two pieces");
            NullSplit { rotation, first, second }
        }
        3 => {
            let longest = (0..3)
                .max_by_key(|&i| (pieces[i].len(), std::cmp::Reverse(i)))
                .expect("three pieces");
            let lead: usize = pieces[..longest].iter().map(Word::len).sum();
            let rotation = (rotation + lead) % u.len();
            let first = pieces[longest].clone();
            let second = pieces[(longest + 1) % 3]
                .concat(&pieces[(longest + 2) % 3])
                .expect("same alphabet");
            NullSplit { rotation, first, second }
        }
        _ => unreachable!("coalescing leaves at most three pieces"),
    };

    debug_assert_eq!(
        u.cyclic_conjugate(split.rotation).expect("in range"),
        split.first.concat(&split.second).expect("same alphabet")
    );
    debug_assert!(split.min_len() >= u.len() / 3);
    Ok(split)
}
