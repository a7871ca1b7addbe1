//! Graphs, generators for the studied families, distances and structural checks.
//!
//! Vertices are dense ids `0..n`. Labels are metadata only. Every graph is
//! simple and connected; construction rejects anything else.

use std::collections::VecDeque;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Largest order for which the full distance table is materialized when no
/// closed-form metric is known.
pub const DISTANCE_TABLE_LIMIT: usize = 8192;

/// Where a graph came from: its family and parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Family {
    Cycle(usize),
    Path(usize),
    Hypercube(usize),
    Grid(usize),
    Torus(usize),
    LeafyCycle(usize),
    Projective(u64),
    RandomTree { n: usize, seed: u64 },
    Product(Box<Family>, Box<Family>),
    Custom(String),
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Cycle(n) => write!(f, "cycle({n})"),
            Family::Path(n) => write!(f, "path({n})"),
            Family::Hypercube(n) => write!(f, "hypercube({n})"),
            Family::Grid(n) => write!(f, "grid({n})"),
            Family::Torus(n) => write!(f, "torus({n})"),
            Family::LeafyCycle(n) => write!(f, "leafy_cycle({n})"),
            Family::Projective(q) => write!(f, "projective({q})"),
            Family::RandomTree { n, seed } => write!(f, "random_tree({n},{seed})"),
            Family::Product(a, b) => write!(f, "product({a},{b})"),
            Family::Custom(name) => f.write_str(name),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// Parses the `Display` form. Names that are not a family call become
    /// `Family::Custom`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let Some(open) = s.find('(') else {
            return Ok(Family::Custom(s.to_string()));
        };
        if !s.ends_with(')') {
            return Ok(Family::Custom(s.to_string()));
        }
        let head = &s[..open];
        let body = &s[open + 1..s.len() - 1];
        let int = |t: &str| -> Result<u64> {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Error::InvalidParameter(format!("bad integer '{t}' in '{s}'")))
        };
        let fam = match head {
            "cycle" => Family::Cycle(int(body)? as usize),
            "path" => Family::Path(int(body)? as usize),
            "hypercube" => Family::Hypercube(int(body)? as usize),
            "grid" => Family::Grid(int(body)? as usize),
            "torus" => Family::Torus(int(body)? as usize),
            "leafy_cycle" => Family::LeafyCycle(int(body)? as usize),
            "projective" => Family::Projective(int(body)?),
            "random_tree" => {
                let (a, b) = body.split_once(',').ok_or_else(|| {
                    Error::InvalidParameter(format!("random_tree needs (n,seed): '{s}'"))
                })?;
                Family::RandomTree {
                    n: int(a)? as usize,
                    seed: int(b)?,
                }
            }
            "product" => {
                let split = top_level_comma(body).ok_or_else(|| {
                    Error::InvalidParameter(format!("product needs two factors: '{s}'"))
                })?;
                let a: Family = body[..split].parse()?;
                let b: Family = body[split + 1..].parse()?;
                Family::Product(Box::new(a), Box::new(b))
            }
            _ => Family::Custom(s.to_string()),
        };
        Ok(fam)
    }
}

fn top_level_comma(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

impl Family {
    /// Builds a family from a CLI-style name and integer parameters,
    /// e.g. `("torus", [6])` or `("random_tree", [10, 7])`.
    pub fn from_name(name: &str, params: &[u64]) -> Result<Family> {
        let one = |what: &str| -> Result<u64> {
            match params {
                [p] => Ok(*p),
                _ => Err(Error::InvalidParameter(format!(
                    "{what} takes exactly one integer parameter"
                ))),
            }
        };
        Ok(match name {
            "cycle" => Family::Cycle(one(name)? as usize),
            "path" => Family::Path(one(name)? as usize),
            "hypercube" => Family::Hypercube(one(name)? as usize),
            "grid" => Family::Grid(one(name)? as usize),
            "torus" => Family::Torus(one(name)? as usize),
            "leafy_cycle" | "leafy-cycle" | "leafy" => Family::LeafyCycle(one(name)? as usize),
            "projective" | "projective_incidence" => Family::Projective(one(name)?),
            "random_tree" | "random-tree" | "tree" => match params {
                [n] => Family::RandomTree {
                    n: *n as usize,
                    seed: 0,
                },
                [n, seed] => Family::RandomTree {
                    n: *n as usize,
                    seed: *seed,
                },
                _ => {
                    return Err(Error::InvalidParameter(
                        "random_tree takes n and an optional seed".into(),
                    ))
                }
            },
            other => {
                return Err(Error::InvalidParameter(format!("unknown family '{other}'")));
            }
        })
    }

    /// Whether every connected graph of this family is a tree.
    pub fn is_tree(&self) -> bool {
        matches!(self, Family::Path(_) | Family::RandomTree { .. })
    }
}

/// How distances are answered.
#[derive(Debug, Clone)]
enum Metric {
    Table(DistanceMatrix),
    Torus(usize),
    Grid(usize),
    Hypercube,
}

/// Exact hop distances between all pairs, stored as a flat row-major table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u32>,
}

impl DistanceMatrix {
    #[inline]
    pub fn get(&self, u: Vertex, v: Vertex) -> u32 {
        self.dist[u * self.n + v]
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn row(&self, u: Vertex) -> &[u32] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }

    pub fn diameter(&self) -> u32 {
        self.dist.iter().copied().max().unwrap_or(0)
    }
}

/// An immutable simple connected graph together with its metric.
#[derive(Debug, Clone)]
pub struct Graph {
    family: Family,
    adj: Vec<Vec<Vertex>>,
    labels: Option<Vec<String>>,
    metric: Metric,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from an edge list, checking simplicity and connectivity.
    pub fn from_edges(
        family: Family,
        n: usize,
        edges: &[(Vertex, Vertex)],
        labels: Option<Vec<String>>,
    ) -> Result<Graph> {
        if n == 0 {
            return Err(Error::MalformedGraph("graph has no vertices".into()));
        }
        if let Some(l) = &labels {
            if l.len() != n {
                return Err(Error::MalformedGraph(format!(
                    "{} labels for {n} vertices",
                    l.len()
                )));
            }
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::MalformedGraph(format!(
                    "edge ({u},{v}) out of range"
                )));
            }
            if u == v {
                return Err(Error::MalformedGraph(format!("self-loop at {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, nb) in adj.iter_mut().enumerate() {
            nb.sort_unstable();
            if nb.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::MalformedGraph(format!("parallel edge at {u}")));
            }
        }
        Self::from_adjacency(family, adj, labels)
    }

    fn from_adjacency(
        family: Family,
        adj: Vec<Vec<Vertex>>,
        labels: Option<Vec<String>>,
    ) -> Result<Graph> {
        let n = adj.len();
        let edge_count = adj.iter().map(Vec::len).sum::<usize>() / 2;
        if let Some(v) = first_unreachable(&adj) {
            return Err(Error::Disconnected(0, v));
        }
        let metric = match &family {
            Family::Torus(m) if *m >= 3 => Metric::Torus(*m),
            Family::Grid(m) => Metric::Grid(*m),
            Family::Hypercube(_) => Metric::Hypercube,
            _ => {
                if n > DISTANCE_TABLE_LIMIT {
                    return Err(Error::Unsupported(format!(
                        "{n} vertices exceed the distance table limit of {DISTANCE_TABLE_LIMIT}"
                    )));
                }
                Metric::Table(bfs_all_pairs(&adj)?)
            }
        };
        Ok(Graph {
            family,
            adj,
            labels,
            metric,
            edge_count,
        })
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn name(&self) -> String {
        self.family.to_string()
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: Vertex) -> String {
        match &self.labels {
            Some(l) => l[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Hop distance between `u` and `v`.
    #[inline]
    pub fn dist(&self, u: Vertex, v: Vertex) -> u32 {
        match &self.metric {
            Metric::Table(t) => t.get(u, v),
            Metric::Torus(m) => {
                let (ur, uc) = (u / m, u % m);
                let (vr, vc) = (v / m, v % m);
                (cyc(ur, vr, *m) + cyc(uc, vc, *m)) as u32
            }
            Metric::Grid(m) => {
                let (ur, uc) = (u / m, u % m);
                let (vr, vc) = (v / m, v % m);
                (ur.abs_diff(vr) + uc.abs_diff(vc)) as u32
            }
            Metric::Hypercube => (u ^ v).count_ones(),
        }
    }

    /// The cached table, when the metric is table-backed.
    pub fn distance_table(&self) -> Option<&DistanceMatrix> {
        match &self.metric {
            Metric::Table(t) => Some(t),
            _ => None,
        }
    }

    pub fn diameter(&self) -> u32 {
        match &self.metric {
            Metric::Table(t) => t.diameter(),
            Metric::Torus(m) => 2 * (*m as u32 / 2),
            Metric::Grid(m) => 2 * (*m as u32 - 1),
            Metric::Hypercube => self.order().trailing_zeros(),
        }
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for (u, nb) in self.adj.iter().enumerate() {
            for &v in nb {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Side length when this is a torus.
    pub fn torus_side(&self) -> Option<usize> {
        match self.family {
            Family::Torus(m) if m >= 3 => Some(m),
            _ => None,
        }
    }

    /// Dimension when this is a hypercube.
    pub fn hypercube_dim(&self) -> Option<usize> {
        match self.family {
            Family::Hypercube(d) => Some(d),
            _ => None,
        }
    }

    /// Order `q` when this is a projective incidence graph.
    pub fn projective_order(&self) -> Option<u64> {
        match self.family {
            Family::Projective(q) => Some(q),
            _ => None,
        }
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            name: self.name(),
            n: self.order(),
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            labels: self.labels.clone(),
        }
    }

    /// Rebuilds a graph from its JSON form. Family names are re-parsed so
    /// that closed-form metrics survive the round trip.
    pub fn from_json(json: &GraphJson) -> Result<Graph> {
        let family: Family = json.name.parse()?;
        let edges: Vec<_> = json.edges.iter().map(|e| (e[0], e[1])).collect();
        let g = Graph::from_edges(family.clone(), json.n, &edges, json.labels.clone())?;
        if !matches!(family, Family::Custom(_) | Family::RandomTree { .. }) {
            // A family name promises a structure; make sure the edges deliver it.
            let reference = generate(&family)?;
            if reference.edges() != g.edges() {
                let custom = Family::Custom(json.name.clone());
                return Graph::from_edges(custom, json.n, &edges, json.labels.clone());
            }
        }
        Ok(g)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("graph json is serializable")
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json_string() + "\n")?;
        Ok(())
    }

    pub fn read_json(path: &Path) -> Result<Graph> {
        let text = std::fs::read_to_string(path)?;
        let json: GraphJson = serde_json::from_str(&text)?;
        Graph::from_json(&json)
    }

    /// SHA-256 of the canonical JSON encoding, hex encoded.
    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.to_json_string().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[inline]
fn cyc(a: usize, b: usize, m: usize) -> usize {
    let d = a.abs_diff(b);
    d.min(m - d)
}

/// Serialized graph: `{"name", "n", "edges", "labels"}` with edges sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub name: String,
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

fn first_unreachable(adj: &[Vec<Vertex>]) -> Option<Vertex> {
    let dist = bfs(adj, 0);
    dist.iter().position(|&d| d == u32::MAX)
}

fn bfs(adj: &[Vec<Vertex>], src: Vertex) -> Vec<u32> {
    let mut dist = vec![u32::MAX; adj.len()];
    let mut queue = VecDeque::new();
    dist[src] = 0;
    queue.push_back(src);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if dist[w] == u32::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

fn bfs_all_pairs(adj: &[Vec<Vertex>]) -> Result<DistanceMatrix> {
    use rayon::prelude::*;
    let n = adj.len();
    let rows: Vec<Vec<u32>> = (0..n).into_par_iter().map(|s| bfs(adj, s)).collect();
    let mut dist = Vec::with_capacity(n * n);
    for (u, row) in rows.into_iter().enumerate() {
        if let Some(v) = row.iter().position(|&d| d == u32::MAX) {
            return Err(Error::Disconnected(u, v));
        }
        dist.extend(row);
    }
    Ok(DistanceMatrix { n, dist })
}

/// Breadth-first distances between all pairs of `g`.
pub fn all_pairs_distances(g: &Graph) -> Result<DistanceMatrix> {
    if let Some(t) = g.distance_table() {
        return Ok(t.clone());
    }
    if g.order() > DISTANCE_TABLE_LIMIT {
        return Err(Error::Unsupported(format!(
            "{} vertices exceed the distance table limit of {DISTANCE_TABLE_LIMIT}",
            g.order()
        )));
    }
    bfs_all_pairs(&g.adj)
}

/// Generates a member of `family`.
pub fn generate(family: &Family) -> Result<Graph> {
    match family {
        Family::Cycle(n) => cycle(*n),
        Family::Path(n) => path(*n),
        Family::Hypercube(n) => hypercube(*n),
        Family::Grid(n) => grid(*n),
        Family::Torus(n) => torus(*n),
        Family::LeafyCycle(n) => leafy_cycle(*n),
        Family::Projective(q) => projective_incidence(*q),
        Family::RandomTree { n, seed } => random_tree(*n, *seed),
        Family::Product(a, b) => cartesian_product(&generate(a)?, &generate(b)?),
        Family::Custom(name) => Err(Error::InvalidParameter(format!(
            "custom graph '{name}' cannot be generated"
        ))),
    }
}

fn need(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg()))
    }
}

pub fn cycle(n: usize) -> Result<Graph> {
    need(n >= 3, || format!("cycle needs n >= 3, got {n}"))?;
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    let labels = (0..n).map(|i| format!("v{i}")).collect();
    Graph::from_edges(Family::Cycle(n), n, &edges, Some(labels))
}

pub fn path(n: usize) -> Result<Graph> {
    need(n >= 1, || "path needs n >= 1".into())?;
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    let labels = (0..n).map(|i| format!("v{i}")).collect();
    Graph::from_edges(Family::Path(n), n, &edges, Some(labels))
}

/// `Q_n`; vertex ids are the bit patterns, labels are `n`-bit strings with
/// coordinate 1 as the most significant character.
pub fn hypercube(n: usize) -> Result<Graph> {
    need((1..=20).contains(&n), || {
        format!("hypercube needs 1 <= n <= 20, got {n}")
    })?;
    let order = 1usize << n;
    let mut edges = Vec::with_capacity(n << (n - 1));
    for v in 0..order {
        for b in 0..n {
            let w = v ^ (1 << b);
            if v < w {
                edges.push((v, w));
            }
        }
    }
    let labels = (0..order).map(|v| format!("{v:0n$b}")).collect();
    Graph::from_edges(Family::Hypercube(n), order, &edges, Some(labels))
}

/// `P_n □ P_n`; vertex `(r, c)` has id `r * n + c`.
pub fn grid(n: usize) -> Result<Graph> {
    need(n >= 2, || format!("grid needs n >= 2, got {n}"))?;
    lattice(Family::Grid(n), n, false)
}

/// `C_n □ C_n`; vertex `(r, c)` has id `r * n + c`. For `n = 2` the
/// parallel edges collapse and the result is the 4-cycle.
pub fn torus(n: usize) -> Result<Graph> {
    need(n >= 2, || format!("torus needs n >= 2, got {n}"))?;
    lattice(Family::Torus(n), n, true)
}

fn lattice(family: Family, n: usize, wrap: bool) -> Result<Graph> {
    let id = |r: usize, c: usize| r * n + c;
    let mut adj = vec![Vec::with_capacity(4); n * n];
    for r in 0..n {
        for c in 0..n {
            let v = id(r, c);
            let mut nb = Vec::with_capacity(4);
            if r > 0 || wrap {
                nb.push(id((r + n - 1) % n, c));
            }
            if r + 1 < n || wrap {
                nb.push(id((r + 1) % n, c));
            }
            if c > 0 || wrap {
                nb.push(id(r, (c + n - 1) % n));
            }
            if c + 1 < n || wrap {
                nb.push(id(r, (c + 1) % n));
            }
            nb.sort_unstable();
            nb.dedup();
            adj[v] = nb;
        }
    }
    let labels = (0..n * n)
        .map(|v| format!("({},{})", v / n, v % n))
        .collect();
    Graph::from_adjacency(family, adj, Some(labels))
}

/// A 5-cycle `v1..v5` with `n - 5` leaves hanging off `v1`. Ids `0..5` are
/// the cycle (id 0 is `v1`), ids `5..n` the leaves.
pub fn leafy_cycle(n: usize) -> Result<Graph> {
    need(n >= 6, || format!("leafy_cycle needs n >= 6, got {n}"))?;
    let mut edges: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
    edges.extend((5..n).map(|leaf| (0, leaf)));
    let labels = (0..n)
        .map(|v| {
            if v < 5 {
                format!("v{}", v + 1)
            } else {
                format!("leaf{}", v - 4)
            }
        })
        .collect();
    Graph::from_edges(Family::LeafyCycle(n), n, &edges, Some(labels))
}

pub fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Projective points of `GF(p)^3`, each normalized so its first nonzero
/// coordinate is 1.
pub fn projective_points(p: u64) -> Vec<[u64; 3]> {
    let mut pts = Vec::with_capacity((p * p + p + 1) as usize);
    for y in 0..p {
        for z in 0..p {
            pts.push([1, y, z]);
        }
    }
    for z in 0..p {
        pts.push([0, 1, z]);
    }
    pts.push([0, 0, 1]);
    pts
}

/// Incidence graph of the Desarguesian plane of prime order `q`.
///
/// Points get ids `0..m` and lines ids `m..2m` with `m = q^2 + q + 1`; a
/// point and a line are adjacent when their coordinate vectors are
/// orthogonal over `GF(q)`.
pub fn projective_incidence(q: u64) -> Result<Graph> {
    if !is_prime(q) {
        return Err(Error::NonPrimeOrder(q));
    }
    need(q <= 97, || format!("projective order {q} is too large"))?;
    let pts = projective_points(q);
    let m = pts.len();
    let mut edges = Vec::with_capacity(m * (q as usize + 1));
    for (i, p) in pts.iter().enumerate() {
        for (j, l) in pts.iter().enumerate() {
            if (p[0] * l[0] + p[1] * l[1] + p[2] * l[2]) % q == 0 {
                edges.push((i, m + j));
            }
        }
    }
    let mut labels: Vec<String> = pts
        .iter()
        .map(|p| format!("P({}:{}:{})", p[0], p[1], p[2]))
        .collect();
    labels.extend(pts.iter().map(|l| format!("L[{}:{}:{}]", l[0], l[1], l[2])));
    Graph::from_edges(Family::Projective(q), 2 * m, &edges, Some(labels))
}

/// Whether `v` is a point (rather than a line) of a projective incidence graph.
pub fn is_projective_point(g: &Graph, v: Vertex) -> bool {
    v < g.order() / 2
}

/// Uniform labelled tree on `n` vertices via a random Prüfer sequence.
pub fn random_tree(n: usize, seed: u64) -> Result<Graph> {
    need(n >= 1, || "random_tree needs n >= 1".into())?;
    let family = Family::RandomTree { n, seed };
    if n == 1 {
        return Graph::from_edges(family, 1, &[], None);
    }
    if n == 2 {
        return Graph::from_edges(family, 2, &[(0, 1)], None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let prufer: Vec<usize> = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &p in &prufer {
        degree[p] += 1;
    }
    let mut leaves: std::collections::BTreeSet<usize> =
        (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &p in &prufer {
        let leaf = *leaves.iter().next().expect("a leaf always exists");
        leaves.remove(&leaf);
        edges.push((leaf.min(p), leaf.max(p)));
        degree[p] -= 1;
        if degree[p] == 1 {
            leaves.insert(p);
        }
    }
    let mut rest = leaves.into_iter();
    let (a, b) = (rest.next().unwrap(), rest.next().unwrap());
    edges.push((a, b));
    Graph::from_edges(family, n, &edges, None)
}

/// `G □ H`; vertex `(a, b)` has id `a * |H| + b`.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Result<Graph> {
    let (ng, nh) = (g.order(), h.order());
    let id = |a: usize, b: usize| a * nh + b;
    let mut edges = Vec::with_capacity(ng * h.size() + nh * g.size());
    for a in 0..ng {
        for (b1, b2) in h.edges() {
            edges.push((id(a, b1), id(a, b2)));
        }
    }
    for (a1, a2) in g.edges() {
        for b in 0..nh {
            edges.push((id(a1, b), id(a2, b)));
        }
    }
    let labels = (0..ng * nh)
        .map(|v| format!("({},{})", g.label(v / nh), h.label(v % nh)))
        .collect();
    Graph::from_edges(
        Family::Product(Box::new(g.family.clone()), Box::new(h.family.clone())),
        ng * nh,
        &edges,
        Some(labels),
    )
}

/// Shuffled copy of `0..n`, used to draw random relabellings in tests and
/// symmetry checks.
pub fn random_permutation(n: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(&mut rng);
    p
}

/// Structural summary of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub order: usize,
    pub size: usize,
    pub connected: bool,
    pub bipartite: bool,
    /// Common degree when the graph is regular.
    pub regular_degree: Option<usize>,
    /// Length of a shortest cycle; `None` for forests.
    pub girth: Option<usize>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "order={} size={} connected={} bipartite={} regular={} girth={}",
            self.order,
            self.size,
            self.connected,
            self.bipartite,
            self.regular_degree
                .map_or("no".to_string(), |d| d.to_string()),
            self.girth.map_or("inf".to_string(), |g| g.to_string()),
        )
    }
}

pub fn validate(g: &Graph) -> ValidationReport {
    let degrees: Vec<usize> = (0..g.order()).map(|v| g.degree(v)).collect();
    let regular_degree = degrees
        .first()
        .copied()
        .filter(|d| degrees.iter().all(|x| x == d));
    ValidationReport {
        order: g.order(),
        size: g.size(),
        connected: first_unreachable(&g.adj).is_none(),
        bipartite: is_bipartite(&g.adj),
        regular_degree,
        girth: girth(&g.adj),
    }
}

fn is_bipartite(adj: &[Vec<Vertex>]) -> bool {
    let mut side = vec![u8::MAX; adj.len()];
    for s in 0..adj.len() {
        if side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if side[w] == u8::MAX {
                    side[w] = 1 - side[u];
                    queue.push_back(w);
                } else if side[w] == side[u] {
                    return false;
                }
            }
        }
    }
    true
}

/// Exact girth: BFS from every vertex, closing cycles on non-tree edges.
/// Searches stop once they are deep enough that no shorter cycle can appear.
fn girth(adj: &[Vec<Vertex>]) -> Option<usize> {
    let n = adj.len();
    let mut best = usize::MAX;
    let mut dist = vec![u32::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut touched = Vec::new();
    let mut queue = VecDeque::new();
    for s in 0..n {
        for &t in &touched {
            dist[t] = u32::MAX;
            parent[t] = usize::MAX;
        }
        touched.clear();
        queue.clear();
        dist[s] = 0;
        touched.push(s);
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            if 2 * dist[u] as usize + 1 >= best {
                break;
            }
            for &w in &adj[u] {
                if dist[w] == u32::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    touched.push(w);
                    queue.push_back(w);
                } else if parent[u] != w {
                    best = best.min((dist[u] + dist[w] + 1) as usize);
                }
            }
        }
    }
    (best != usize::MAX).then_some(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle() {
        let g = cycle(3).unwrap();
        assert_eq!((g.order(), g.size()), (3, 3));
        assert_eq!(validate(&g).regular_degree, Some(2));
    }

    #[test]
    fn heawood_graph() {
        let g = projective_incidence(2).unwrap();
        let r = validate(&g);
        assert_eq!((r.order, r.size), (14, 21));
        assert_eq!(r.regular_degree, Some(3));
        assert!(r.bipartite);
        assert_eq!(r.girth, Some(6));
    }

    #[test]
    fn leafy_cycle_shape() {
        let g = leafy_cycle(12).unwrap();
        assert_eq!(g.order(), 12);
        assert_eq!(g.size(), 5 + 7);
        assert_eq!(g.degree(0), 2 + 7);
        assert!((5..12).all(|leaf| g.neighbors(leaf) == [0]));
        assert_eq!(validate(&g).girth, Some(5));
    }

    #[test]
    fn cube_labels_and_distance() {
        let g = hypercube(3).unwrap();
        assert_eq!((g.order(), g.size()), (8, 12));
        assert_eq!(g.label(0), "000");
        assert_eq!(g.label(7), "111");
        assert_eq!(g.dist(0, 7), 3);
    }

    #[test]
    fn torus_and_path_distances() {
        let t = torus(6).unwrap();
        assert_eq!(t.dist(0, 4 * 6 + 5), 3);
        let p = path(5).unwrap();
        assert_eq!(p.dist(0, 4), 4);
    }

    #[test]
    fn girths() {
        assert_eq!(validate(&cycle(9).unwrap()).girth, Some(9));
        assert_eq!(validate(&grid(3).unwrap()).girth, Some(4));
        assert_eq!(validate(&path(4).unwrap()).girth, None);
        assert_eq!(validate(&projective_incidence(3).unwrap()).girth, Some(6));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(
            projective_incidence(4),
            Err(Error::NonPrimeOrder(4))
        ));
        assert!(matches!(
            projective_incidence(1),
            Err(Error::NonPrimeOrder(1))
        ));
        assert!(cycle(2).is_err());
        assert!(leafy_cycle(5).is_err());
        assert!(hypercube(0).is_err());
        assert!(grid(1).is_err());
    }

    #[test]
    fn rejects_non_simple_or_disconnected() {
        let f = || Family::Custom("x".into());
        assert!(Graph::from_edges(f(), 3, &[(0, 0), (0, 1), (1, 2)], None).is_err());
        assert!(Graph::from_edges(f(), 3, &[(0, 1), (1, 0), (1, 2)], None).is_err());
        assert!(matches!(
            Graph::from_edges(f(), 4, &[(0, 1), (2, 3)], None),
            Err(Error::Disconnected(..))
        ));
    }

    #[test]
    fn family_names_round_trip() {
        for f in [
            Family::Cycle(9),
            Family::Torus(256),
            Family::RandomTree { n: 10, seed: 3 },
            Family::Product(
                Box::new(Family::Cycle(3)),
                Box::new(Family::Product(
                    Box::new(Family::Path(2)),
                    Box::new(Family::Path(3)),
                )),
            ),
        ] {
            assert_eq!(f.to_string().parse::<Family>().unwrap(), f);
        }
        assert_eq!(
            "my graph".parse::<Family>().unwrap(),
            Family::Custom("my graph".into())
        );
    }

    #[test]
    fn json_round_trip_and_canonical_edges() {
        let g = projective_incidence(3).unwrap();
        let json = g.to_json_string();
        let back = Graph::from_json(&serde_json::from_str(&json).unwrap()).unwrap();
        assert_eq!(back.to_json_string(), json);
        assert_eq!(back.family(), g.family());
        let edges = g.edges();
        assert!(edges.windows(2).all(|w| w[0] < w[1]));
        assert!(edges.iter().all(|(u, v)| u < v));
    }

    #[test]
    fn json_with_wrong_structure_becomes_custom() {
        let json = GraphJson {
            name: "cycle(4)".into(),
            n: 4,
            edges: vec![[0, 1], [1, 2], [2, 3]],
            labels: None,
        };
        let g = Graph::from_json(&json).unwrap();
        assert_eq!(g.family(), &Family::Custom("cycle(4)".into()));
    }

    #[test]
    fn random_trees_are_trees_and_seeded() {
        for seed in 0..20 {
            let g = random_tree(17, seed).unwrap();
            assert_eq!(g.size(), 16);
            assert_eq!(validate(&g).girth, None);
            assert_eq!(g.edges(), random_tree(17, seed).unwrap().edges());
        }
    }

    #[test]
    fn products_match_dedicated_generators() {
        let p = cartesian_product(&path(4).unwrap(), &path(4).unwrap()).unwrap();
        assert_eq!(p.edges(), grid(4).unwrap().edges());
        let t = cartesian_product(&cycle(5).unwrap(), &cycle(5).unwrap()).unwrap();
        assert_eq!(t.edges(), torus(5).unwrap().edges());
    }

    #[test]
    fn torus_of_side_two_is_a_square() {
        let g = torus(2).unwrap();
        assert_eq!((g.order(), g.size()), (4, 4));
        assert_eq!(g.dist(0, 3), 2);
    }
}
