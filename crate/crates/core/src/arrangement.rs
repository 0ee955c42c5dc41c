use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::exactlin::{self, Covector, LinAlgError};
use crate::generators::WeylSpec;

/// Type of a Namikawa hyperplane: `T` where the deformation is not terminal,
/// `F` where it fails to be Q-factorial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Tag {
    T,
    F,
}

/// A central hyperplane arrangement: an ambient dimension together with an
/// ordered list of distinct covectors.
///
/// `layout` records the Weyl block structure of the coordinates (each `S_m`
/// factor owns `m - 1` essential coordinates, in order) and `tags` carries
/// optional T/F labels aligned with `hyperplanes`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    dim: usize,
    hyperplanes: Vec<Covector>,
    tags: Vec<Option<Tag>>,
    pub label: Option<String>,
    pub layout: Option<WeylSpec>,
}

impl Arrangement {
    /// Builds an arrangement, silently dropping repeated hyperplanes.
    pub fn new(dim: usize, hyperplanes: Vec<Covector>) -> Result<Self, LinAlgError> {
        Self::from_tagged(dim, hyperplanes.into_iter().map(|h| (h, None))).map(|(a, _)| a)
    }

    /// Builds an arrangement from tagged covectors, keeping the first
    /// occurrence of each hyperplane. Also returns the number of duplicates
    /// dropped.
    pub fn from_tagged(
        dim: usize,
        items: impl IntoIterator<Item = (Covector, Option<Tag>)>,
    ) -> Result<(Self, usize), LinAlgError> {
        let mut seen = HashSet::new();
        let mut hyperplanes = Vec::new();
        let mut tags = Vec::new();
        let mut duplicates = 0;
        for (h, tag) in items {
            if h.dim() != dim {
                return Err(LinAlgError::DimensionMismatch { expected: dim, found: h.dim() });
            }
            if seen.insert(h.clone()) {
                hyperplanes.push(h);
                tags.push(tag);
            } else {
                duplicates += 1;
            }
        }
        Ok((Arrangement { dim, hyperplanes, tags, label: None, layout: None }, duplicates))
    }

    /// Convenience constructor from integer rows; panics on zero rows.
    pub fn from_rows(dim: usize, rows: &[&[i64]]) -> Self {
        let hs = rows.iter().map(|r| Covector::from_i64(r).expect("nonzero row")).collect();
        Self::new(dim, hs).expect("rows have the ambient dimension")
    }

    pub fn empty(dim: usize) -> Self {
        Arrangement { dim, hyperplanes: Vec::new(), tags: Vec::new(), label: None, layout: None }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn with_layout(mut self, layout: WeylSpec) -> Self {
        self.layout = Some(layout);
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn hyperplanes(&self) -> &[Covector] {
        &self.hyperplanes
    }

    pub fn hyperplane(&self, i: usize) -> &Covector {
        &self.hyperplanes[i]
    }

    pub fn tags(&self) -> &[Option<Tag>] {
        &self.tags
    }

    pub fn tag(&self, i: usize) -> Option<Tag> {
        self.tags[i]
    }

    pub fn is_tagged(&self) -> bool {
        self.tags.iter().any(Option::is_some)
    }

    /// Indices of hyperplanes carrying the given tag.
    pub fn indices_tagged(&self, tag: Tag) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.tags[i] == Some(tag)).collect()
    }

    pub fn rank(&self) -> usize {
        exactlin::rank_of(self.dim, &self.hyperplanes).expect("dimensions checked on construction")
    }

    pub fn is_essential(&self) -> bool {
        self.rank() == self.dim
    }

    pub fn index_of(&self, h: &Covector) -> Option<usize> {
        self.hyperplanes.iter().position(|g| g == h)
    }

    pub fn index_map(&self) -> HashMap<&Covector, usize> {
        self.hyperplanes.iter().enumerate().map(|(i, h)| (h, i)).collect()
    }

    /// Set equality of the hyperplanes (order, tags and metadata ignored).
    pub fn same_hyperplanes(&self, other: &Arrangement) -> bool {
        self.dim == other.dim && self.len() == other.len() && {
            let mine: HashSet<&Covector> = self.hyperplanes.iter().collect();
            other.hyperplanes.iter().all(|h| mine.contains(h))
        }
    }

    /// The arrangement with hyperplanes sorted in covector order.
    pub fn sorted(&self) -> Arrangement {
        let mut idx: Vec<usize> = (0..self.len()).collect();
        idx.sort_by(|&a, &b| self.hyperplanes[a].cmp(&self.hyperplanes[b]));
        self.select(&idx)
    }

    /// Sub-arrangement on the given indices (in that order), same ambient
    /// dimension and metadata.
    pub fn select(&self, indices: &[usize]) -> Arrangement {
        Arrangement {
            dim: self.dim,
            hyperplanes: indices.iter().map(|&i| self.hyperplanes[i].clone()).collect(),
            tags: indices.iter().map(|&i| self.tags[i]).collect(),
            label: self.label.clone(),
            layout: self.layout.clone(),
        }
    }

    /// Rewrites the arrangement in the coordinates of its row space, so that
    /// it becomes essential. Hyperplane order and tags are preserved; the
    /// coordinate layout is dropped unless the arrangement was already
    /// essential.
    pub fn essentialize(&self) -> Arrangement {
        let (rank, hs) =
            exactlin::essential_coordinates(self.dim, &self.hyperplanes).expect("dimensions checked on construction");
        let layout = if rank == self.dim { self.layout.clone() } else { None };
        Arrangement { dim: rank, hyperplanes: hs, tags: self.tags.clone(), label: self.label.clone(), layout }
    }
}
