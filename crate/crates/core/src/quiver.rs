//! Finite quivers, dimension vectors and the Euler form, together with the
//! standard constructions used throughout the crate: doubling, tripling,
//! opposite quiver, the loops-only quiver and framing.
//!
//! Vertex order is the order of declaration and fixes the coordinate order of
//! every [`DimVector`]. Generated names follow one rule each: `a` becomes
//! `a*`, the loop at vertex `i` is `ω_i`, and the framing vertex is `∞`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

/// Name of the vertex added by [`Quiver::frame`].
pub const FRAMING_VERTEX: &str = "∞";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate arrow id `{0}`")]
    DuplicateArrow(String),
    #[error("arrow `{arrow}` refers to undeclared vertex `{vertex}`")]
    UnknownVertex { arrow: String, vertex: String },
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("dimension vector has {got} entries but the quiver has {expected} vertices")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("generated name `{0}` collides with an existing id")]
    NameCollision(String),
    #[error("cannot parse dimension vector `{0}`")]
    ParseDim(String),
    #[error("invalid quiver description: {0}")]
    Format(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

impl Arrow {
    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }
}

/// A finite quiver with labelled vertices and arrows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: BTreeMap<String, usize>,
    arrow_index: BTreeMap<String, usize>,
}

/// On-disk form: `{"vertices": [...], "arrows": [{"id", "from", "to"}, ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverFile {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowFile {
    pub id: String,
    pub from: String,
    pub to: String,
}

impl Quiver {
    /// Builds a quiver from vertex ids and `(arrow id, source id, target id)` triples.
    pub fn new<V, A>(vertices: V, arrows: A) -> Result<Self, QuiverError>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        A: IntoIterator<Item = (String, String, String)>,
    {
        let mut q = Quiver {
            vertices: Vec::new(),
            arrows: Vec::new(),
            vertex_index: BTreeMap::new(),
            arrow_index: BTreeMap::new(),
        };
        for v in vertices {
            q.push_vertex(v.into())?;
        }
        for (id, from, to) in arrows {
            let source = q.vertex(&from).ok_or_else(|| QuiverError::UnknownVertex {
                arrow: id.clone(),
                vertex: from.clone(),
            })?;
            let target = q.vertex(&to).ok_or_else(|| QuiverError::UnknownVertex {
                arrow: id.clone(),
                vertex: to.clone(),
            })?;
            q.push_arrow(id, source, target)?;
        }
        Ok(q)
    }

    fn push_vertex(&mut self, id: String) -> Result<usize, QuiverError> {
        if self.vertex_index.contains_key(&id) {
            return Err(QuiverError::DuplicateVertex(id));
        }
        let idx = self.vertices.len();
        self.vertex_index.insert(id.clone(), idx);
        self.vertices.push(id);
        Ok(idx)
    }

    fn push_arrow(
        &mut self,
        id: String,
        source: usize,
        target: usize,
    ) -> Result<usize, QuiverError> {
        if self.arrow_index.contains_key(&id) {
            return Err(QuiverError::DuplicateArrow(id));
        }
        let idx = self.arrows.len();
        self.arrow_index.insert(id.clone(), idx);
        self.arrows.push(Arrow { id, source, target });
        Ok(idx)
    }

    fn push_generated_arrow(
        &mut self,
        id: String,
        source: usize,
        target: usize,
    ) -> Result<usize, QuiverError> {
        if self.arrow_index.contains_key(&id) {
            return Err(QuiverError::NameCollision(id));
        }
        self.push_arrow(id, source, target)
    }

    /// The quiver `Q^(l)`: one vertex `0` and `l` loops.
    pub fn loops(l: usize) -> Self {
        let arrows = (1..=l).map(|k| {
            let id = if l == 1 {
                "ℓ".to_string()
            } else {
                format!("ℓ{k}")
            };
            (id, "0".to_string(), "0".to_string())
        });
        Quiver::new(["0"], arrows).expect("loop quiver is well formed")
    }

    /// One vertex, no arrows.
    pub fn point() -> Self {
        Self::loops(0)
    }

    /// One vertex, one loop `ℓ`.
    pub fn jordan() -> Self {
        Self::loops(1)
    }

    /// The cyclic affine `A_1` quiver: `a: 0 → 1`, `b: 1 → 0`.
    pub fn affine_a1() -> Self {
        Quiver::new(
            ["0", "1"],
            [
                ("a".to_string(), "0".to_string(), "1".to_string()),
                ("b".to_string(), "1".to_string(), "0".to_string()),
            ],
        )
        .expect("affine A1 quiver is well formed")
    }

    pub fn from_file(file: &QuiverFile) -> Result<Self, QuiverError> {
        Quiver::new(
            file.vertices.iter().cloned(),
            file.arrows
                .iter()
                .map(|a| (a.id.clone(), a.from.clone(), a.to.clone())),
        )
    }

    pub fn to_file(&self) -> QuiverFile {
        QuiverFile {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| ArrowFile {
                    id: a.id.clone(),
                    from: self.vertices[a.source].clone(),
                    to: self.vertices[a.target].clone(),
                })
                .collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, QuiverError> {
        let file: QuiverFile =
            serde_json::from_str(text).map_err(|e| QuiverError::Format(e.to_string()))?;
        Self::from_file(&file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("quiver serializes")
    }

    /// Hex SHA-256 of the canonical JSON serialization.
    pub fn canonical_hash(&self) -> String {
        hex::encode(Sha256::digest(self.to_json().as_bytes()))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, idx: usize) -> &Arrow {
        &self.arrows[idx]
    }

    pub fn vertex(&self, id: &str) -> Option<usize> {
        self.vertex_index.get(id).copied()
    }

    pub fn arrow_by_id(&self, id: &str) -> Option<usize> {
        self.arrow_index.get(id).copied()
    }

    pub fn require_arrow(&self, id: &str) -> Result<usize, QuiverError> {
        self.arrow_by_id(id)
            .ok_or_else(|| QuiverError::UnknownArrow(id.to_string()))
    }

    pub fn check_dim(&self, d: &DimVector) -> Result<(), QuiverError> {
        if d.len() != self.vertex_count() {
            return Err(QuiverError::DimensionMismatch {
                expected: self.vertex_count(),
                got: d.len(),
            });
        }
        Ok(())
    }

    /// `χ(d, e) = Σ_i d_i e_i − Σ_a d_{s(a)} e_{t(a)}`.
    pub fn euler_form(&self, d: &DimVector, e: &DimVector) -> Result<i64, QuiverError> {
        self.check_dim(d)?;
        self.check_dim(e)?;
        let diag: i64 = d
            .iter()
            .zip(e.iter())
            .map(|(&x, &y)| x as i64 * y as i64)
            .sum();
        let off: i64 = self
            .arrows
            .iter()
            .map(|a| d[a.source] as i64 * e[a.target] as i64)
            .sum();
        Ok(diag - off)
    }

    /// Adds a reversed arrow `a*` for every arrow `a`.
    pub fn double(&self) -> Result<Quiver, QuiverError> {
        let mut q = self.clone();
        for a in &self.arrows {
            q.push_generated_arrow(format!("{}*", a.id), a.target, a.source)?;
        }
        Ok(q)
    }

    /// The doubled quiver with an extra loop `ω_i` at every vertex.
    pub fn triple(&self) -> Result<Quiver, QuiverError> {
        let mut q = self.double()?;
        for (i, v) in self.vertices.iter().enumerate() {
            q.push_generated_arrow(omega_name(v), i, i)?;
        }
        Ok(q)
    }

    /// Reverses every arrow; `a` becomes `a*`.
    pub fn opposite(&self) -> Quiver {
        let mut q = Quiver {
            vertices: self.vertices.clone(),
            arrows: Vec::new(),
            vertex_index: self.vertex_index.clone(),
            arrow_index: BTreeMap::new(),
        };
        for a in &self.arrows {
            q.push_arrow(format!("{}*", a.id), a.target, a.source)
                .expect("suffixing distinct ids keeps them distinct");
        }
        q
    }

    /// Same vertices, exactly one loop `ω_i` per vertex and nothing else.
    pub fn omega_quiver(&self) -> Quiver {
        let mut q = Quiver {
            vertices: self.vertices.clone(),
            arrows: Vec::new(),
            vertex_index: self.vertex_index.clone(),
            arrow_index: BTreeMap::new(),
        };
        for (i, v) in self.vertices.iter().enumerate() {
            q.push_arrow(omega_name(v), i, i)
                .expect("vertex ids are distinct");
        }
        q
    }

    /// Appends the vertex `∞` with `f_i` arrows `∞ → i`, named `∞_i_k`.
    pub fn frame(&self, f: &DimVector) -> Result<Quiver, QuiverError> {
        self.check_dim(f)?;
        let mut q = self.clone();
        if q.vertex_index.contains_key(FRAMING_VERTEX) {
            return Err(QuiverError::NameCollision(FRAMING_VERTEX.to_string()));
        }
        let inf = q.push_vertex(FRAMING_VERTEX.to_string())?;
        for (i, &fi) in f.iter().enumerate() {
            for k in 0..fi {
                let id = format!("{FRAMING_VERTEX}_{}_{k}", self.vertices[i]);
                q.push_generated_arrow(id, inf, i)?;
            }
        }
        Ok(q)
    }

    /// Copy of the quiver with one arrow reversed (id kept).
    pub fn reverse_arrow(&self, idx: usize) -> Quiver {
        let mut q = self.clone();
        let a = &mut q.arrows[idx];
        std::mem::swap(&mut a.source, &mut a.target);
        q
    }

    /// Number of arrows `i → j`, indexed `[i][j]`.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut m = vec![vec![0; n]; n];
        for a in &self.arrows {
            m[a.source][a.target] += 1;
        }
        m
    }

    pub fn is_symmetric(&self) -> bool {
        let m = self.adjacency();
        let n = m.len();
        (0..n).all(|i| (0..n).all(|j| m[i][j] == m[j][i]))
    }

    pub fn zero_dim(&self) -> DimVector {
        DimVector(vec![0; self.vertex_count()])
    }
}

/// Id of the loop added at vertex `v` by [`Quiver::triple`].
pub fn omega_name(v: &str) -> String {
    format!("ω_{v}")
}

/// A dimension vector, one non-negative entry per vertex in vertex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DimVector(pub Vec<u32>);

impl DimVector {
    pub fn new(coords: Vec<u32>) -> Self {
        DimVector(coords)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, u32> {
        self.0.iter()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn scaled(&self, k: u32) -> DimVector {
        DimVector(self.0.iter().map(|&x| x * k).collect())
    }

    /// Componentwise `self ≤ other`.
    pub fn fits_in(&self, other: &DimVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn checked_sub(&self, other: &DimVector) -> Option<DimVector> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a.checked_sub(b))
            .collect::<Option<Vec<_>>>()
            .map(DimVector)
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// gcd of the entries (0 for the zero vector).
    pub fn content(&self) -> u32 {
        self.0.iter().fold(0, |g, &x| num_integer::gcd(g, x))
    }

    /// Not a proper multiple of another lattice point; the zero vector is divisible.
    pub fn is_indivisible(&self) -> bool {
        self.content() == 1
    }

    /// If `self = k·other` for a positive integer `k`, returns `k`.
    pub fn multiple_of(&self, other: &DimVector) -> Option<u32> {
        if other.is_zero() || self.len() != other.len() {
            return None;
        }
        let (i, &o) = other.0.iter().enumerate().find(|(_, &o)| o != 0)?;
        if !self.0[i].is_multiple_of(o) {
            return None;
        }
        let k = self.0[i] / o;
        (k > 0 && *self == other.scaled(k)).then_some(k)
    }

    /// Every dimension vector of the given length with `1 ≤ Σ d_i ≤ max_total`,
    /// ordered by total degree then lexicographically.
    pub fn all_nonzero_up_to(len: usize, max_total: u32) -> Vec<DimVector> {
        let mut out = Vec::new();
        for total in 1..=max_total {
            let mut cur = vec![0; len];
            compositions(len, total, 0, &mut cur, &mut out);
        }
        out
    }
}

fn compositions(
    len: usize,
    remaining: u32,
    pos: usize,
    cur: &mut Vec<u32>,
    out: &mut Vec<DimVector>,
) {
    if len == 0 {
        return;
    }
    if pos == len - 1 {
        cur[pos] = remaining;
        out.push(DimVector(cur.clone()));
        return;
    }
    for x in (0..=remaining).rev() {
        cur[pos] = x;
        compositions(len, remaining - x, pos + 1, cur, out);
    }
}

impl std::ops::Index<usize> for DimVector {
    type Output = u32;
    fn index(&self, i: usize) -> &u32 {
        &self.0[i]
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for DimVector {
    type Err = QuiverError;

    /// Parses `"1,1"` (brackets and spaces tolerated).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s
            .trim()
            .trim_start_matches(['(', '['])
            .trim_end_matches([')', ']']);
        inner
            .split(',')
            .map(|p| p.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map(DimVector)
            .map_err(|_| QuiverError::ParseDim(s.to_string()))
    }
}

impl From<Vec<u32>> for DimVector {
    fn from(v: Vec<u32>) -> Self {
        DimVector(v)
    }
}
