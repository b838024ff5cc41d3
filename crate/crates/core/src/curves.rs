//! Root and line classes, their restriction to a configuration, and dual graphs.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;
use std::sync::OnceLock;

use num_integer::Roots;
use serde::{Serialize, Serializer};

use crate::config::SingularityProfile;
use crate::error::{Error, Result};
use crate::lattice::{lattice_for_degree, DivisorClass, IntersectionForm, Model};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CurveKind {
    Root,
    Line,
}

/// A finite set of classes of one kind, sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveSet {
    pub form: IntersectionForm,
    pub kind: CurveKind,
    pub classes: Vec<DivisorClass>,
}

impl CurveSet {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn contains(&self, d: &DivisorClass) -> bool {
        self.classes.binary_search(d).is_ok()
    }
}

impl Serialize for CurveSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.classes.serialize(s)
    }
}

/// All integer vectors of length `n` with the given sum and sum of squares.
fn sum_square_solutions(n: usize, sum: i64, sumsq: i64) -> Vec<Vec<i64>> {
    fn go(n: usize, s: i64, q: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        let m = (n - cur.len()) as i64;
        if m == 0 {
            if s == 0 && q == 0 {
                out.push(cur.clone());
            }
            return;
        }
        // Cauchy-Schwarz and y^2 = y (mod 2)
        if q < 0 || s * s > m * q || (q - s).rem_euclid(2) != 0 {
            return;
        }
        let r = q.sqrt();
        for y in -r..=r {
            if y * y > q {
                continue;
            }
            cur.push(y);
            go(n, s - y, q - y * y, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, sum, sumsq, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Classes with `D^2 = self_int` and `D.K = k_int`, by direct coefficient search.
fn search_classes(form: &IntersectionForm, self_int: i64, k_int: i64) -> Vec<DivisorClass> {
    let mut out = Vec::new();
    match form.model() {
        Model::BlowUp => {
            // D = x l - sum y_i e_i: D.K = -3x + sum y, D^2 = x^2 - sum y^2
            let n = form.num_points() as i64;
            // (3x + k)^2 <= n (x^2 - s) is a quadratic in x with leading
            // coefficient 9 - n > 0, so its solutions lie in a bounded window.
            let mut bound = 0i64;
            while (9 - n) * bound * bound - 6 * k_int.abs() * bound - k_int * k_int
                <= n * self_int.abs()
            {
                bound += 1;
            }
            for x in -bound..=bound {
                let sum = k_int + 3 * x;
                let sumsq = x * x - self_int;
                if sumsq < 0 || sum * sum > n * sumsq {
                    continue;
                }
                for y in sum_square_solutions(n as usize, sum, sumsq) {
                    let mut c = Vec::with_capacity(n as usize + 1);
                    c.push(x);
                    c.extend(y.iter().map(|v| -v));
                    out.push(DivisorClass(c));
                }
            }
        }
        Model::Hirzebruch => {
            // D = aM + bF: D.K = -2b, D^2 = -2a^2 + 2ab
            if k_int % 2 == 0 {
                let b = -k_int / 2;
                let bound = b.abs() + self_int.abs() + 1;
                for a in -bound..=bound {
                    if -2 * a * a + 2 * a * b == self_int {
                        out.push(DivisorClass(vec![a, b]));
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// Every root class of the lattice.
pub fn roots(form: &IntersectionForm) -> CurveSet {
    CurveSet {
        form: form.clone(),
        kind: CurveKind::Root,
        classes: search_classes(form, -2, 0),
    }
}

/// Every line class of the lattice.
pub fn line_classes(form: &IntersectionForm) -> CurveSet {
    CurveSet {
        form: form.clone(),
        kind: CurveKind::Line,
        classes: search_classes(form, -1, -1),
    }
}

/// Simple roots of the root system `K^perp`.
pub fn simple_roots(form: &IntersectionForm) -> Vec<DivisorClass> {
    let r = form.rank();
    match form.model() {
        Model::Hirzebruch => vec![DivisorClass(vec![1, 0])],
        Model::BlowUp => {
            let n = form.num_points();
            let mut out = Vec::new();
            if n >= 3 {
                let mut a0 = vec![0; r];
                a0[0] = 1;
                a0[1] = -1;
                a0[2] = -1;
                a0[3] = -1;
                out.push(DivisorClass(a0));
            }
            for i in 1..n {
                let mut a = vec![0; r];
                a[i] = 1;
                a[i + 1] = -1;
                out.push(DivisorClass(a));
            }
            out
        }
    }
}

fn reflection_closure(form: &IntersectionForm, seeds: Vec<DivisorClass>) -> Vec<DivisorClass> {
    let simple = simple_roots(form);
    let mut seen: BTreeSet<DivisorClass> = seeds.iter().cloned().collect();
    let mut queue: VecDeque<DivisorClass> = seeds.into();
    while let Some(v) = queue.pop_front() {
        for a in &simple {
            // s_a(v) = v + (v.a) a since a^2 = -2
            let c = form.dot(&v, a);
            if c == 0 {
                continue;
            }
            let w = DivisorClass::combination(form.rank(), &[(1, &v), (c, a)]);
            if seen.insert(w.clone()) {
                queue.push_back(w);
            }
        }
    }
    seen.into_iter().collect()
}

/// Roots as the Weyl orbit of the simple roots (independent of [`roots`]).
pub fn roots_by_reflection(form: &IntersectionForm) -> Vec<DivisorClass> {
    reflection_closure(form, simple_roots(form))
}

/// Lines as Weyl orbits of `e_n` and `l - e_1 - e_2` (independent of [`line_classes`]).
pub fn lines_by_reflection(form: &IntersectionForm) -> Vec<DivisorClass> {
    let r = form.rank();
    let n = form.num_points();
    let mut seeds = Vec::new();
    if n >= 1 {
        seeds.push(DivisorClass::unit(r, n));
    }
    if n >= 2 {
        let mut v = vec![0; r];
        v[0] = 1;
        v[1] = -1;
        v[2] = -1;
        seeds.push(DivisorClass(v));
    }
    reflection_closure(form, seeds)
}

struct Cached {
    roots: Vec<DivisorClass>,
    lines: Vec<DivisorClass>,
}

fn cached(degree: i64) -> &'static Cached {
    static CACHE: OnceLock<Vec<Cached>> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        (1..=8)
            .map(|d| {
                let f = lattice_for_degree(d).expect("degree in range");
                Cached {
                    roots: roots(&f).classes,
                    lines: line_classes(&f).classes,
                }
            })
            .collect()
    });
    &all[(degree - 1) as usize]
}

/// Memoised root classes for a form built by this library.
pub fn all_roots(form: &IntersectionForm) -> &'static [DivisorClass] {
    &cached(form.degree()).roots
}

/// Memoised line classes for a form built by this library.
pub fn all_lines(form: &IntersectionForm) -> &'static [DivisorClass] {
    &cached(form.degree()).lines
}

/// Line classes meeting every listed root non-negatively.
pub fn lines_avoiding(form: &IntersectionForm, roots: &[DivisorClass]) -> Vec<DivisorClass> {
    all_lines(form)
        .iter()
        .filter(|l| roots.iter().all(|m| form.dot(l, m) >= 0))
        .cloned()
        .collect()
}

/// The (-1)-curves of the weak del Pezzo surface carrying `profile`.
pub fn lines_on_surface(profile: &SingularityProfile) -> CurveSet {
    CurveSet {
        form: profile.form.clone(),
        kind: CurveKind::Line,
        classes: lines_avoiding(&profile.form, &profile.roots),
    }
}

/// Weighted incidence graph of a curve configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraph {
    pub vertices: Vec<DivisorClass>,
    /// Self-intersection of each vertex.
    pub labels: Vec<i64>,
    /// `(i, j, multiplicity)` with `i < j`.
    pub edges: Vec<(usize, usize, i64)>,
}

pub fn dual_graph(classes: &[DivisorClass], form: &IntersectionForm) -> Result<DualGraph> {
    for c in classes {
        form.check_len(c.len())?;
    }
    let mut edges = Vec::new();
    for i in 0..classes.len() {
        for j in i + 1..classes.len() {
            let p = form.dot(&classes[i], &classes[j]);
            if p < 0 {
                return Err(Error::NegativePairing { i, j, value: p });
            }
            if p > 0 {
                edges.push((i, j, p));
            }
        }
    }
    Ok(DualGraph {
        vertices: classes.to_vec(),
        labels: classes.iter().map(|c| form.dot(c, c)).collect(),
        edges,
    })
}

/// True iff the multigraph contains a cycle; a multiple edge is a cycle.
pub fn has_cycle(g: &DualGraph) -> bool {
    if g.edges.iter().any(|e| e.2 >= 2) {
        return true;
    }
    let mut parent: Vec<usize> = (0..g.vertices.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for &(i, j, _) in &g.edges {
        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
        if a == b {
            return true;
        }
        parent[a] = b;
    }
    false
}

impl DualGraph {
    pub fn degree_of(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.0 == v || e.1 == v).count()
    }

    fn glyph(&self, v: usize) -> String {
        match self.labels[v] {
            -2 => "○".to_string(),
            -1 => "●".to_string(),
            k => format!("({k})"),
        }
    }

    /// Renders with ○ for (-2)-curves and ● for (-1)-curves; paths on one line,
    /// anything else as a vertex list plus edges.
    pub fn render(&self) -> String {
        let n = self.vertices.len();
        if n == 0 {
            return "(empty)".into();
        }
        let is_path = !has_cycle(self)
            && self.edges.len() + 1 == n
            && (0..n).all(|v| self.degree_of(v) <= 2);
        let mut s = String::new();
        if is_path {
            let start = (0..n).find(|&v| self.degree_of(v) <= 1).unwrap_or(0);
            let mut prev = usize::MAX;
            let mut cur = start;
            loop {
                let _ = write!(s, "{}{}", self.glyph(cur), cur + 1);
                let next = self.edges.iter().find_map(|&(i, j, _)| {
                    if i == cur && j != prev {
                        Some(j)
                    } else if j == cur && i != prev {
                        Some(i)
                    } else {
                        None
                    }
                });
                match next {
                    Some(nx) => {
                        s.push_str(" ─ ");
                        prev = cur;
                        cur = nx;
                    }
                    None => break,
                }
            }
            return s;
        }
        for v in 0..n {
            let _ = write!(s, "{}{} ", self.glyph(v), v + 1);
        }
        s.push('|');
        for &(i, j, m) in &self.edges {
            if m == 1 {
                let _ = write!(s, " {}-{}", i + 1, j + 1);
            } else {
                let _ = write!(s, " {}={}x{}", i + 1, j + 1, m);
            }
        }
        s
    }
}
