//! Du Val configurations: validation, ADE classification and surface types.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::curves::{all_lines, all_roots, lines_on_surface};
use crate::error::{Error, Result};
use crate::lattice::{lattice_for_degree, DivisorClass, IntersectionForm};
use crate::linalg;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AdeType {
    pub family: Family,
    pub n: usize,
}

impl AdeType {
    pub const fn new(family: Family, n: usize) -> Self {
        AdeType { family, n }
    }

    pub const fn a(n: usize) -> Self {
        AdeType::new(Family::A, n)
    }

    pub const fn d(n: usize) -> Self {
        AdeType::new(Family::D, n)
    }

    pub const fn e(n: usize) -> Self {
        AdeType::new(Family::E, n)
    }

    /// Edges of the Dynkin diagram in canonical vertex order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        match self.family {
            Family::A => (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect(),
            Family::D => {
                let mut e = vec![(0, 2), (1, 2)];
                e.extend((2..n - 1).map(|i| (i, i + 1)));
                e
            }
            Family::E if n == 6 => vec![(0, 2), (2, 4), (1, 3), (3, 4), (4, 5)],
            Family::E => {
                // 1-3-4-5-..., 2 on 4 (1-based)
                let mut e = vec![(0, 2), (2, 3), (1, 3)];
                e.extend((3..n - 1).map(|i| (i, i + 1)));
                e
            }
        }
    }

    /// Negated Cartan matrix (the Gram matrix of the simple roots).
    pub fn gram(&self) -> Vec<Vec<i64>> {
        let mut g = vec![vec![0; self.n]; self.n];
        for (i, row) in g.iter_mut().enumerate() {
            row[i] = -2;
        }
        for (i, j) in self.edges() {
            g[i][j] = 1;
            g[j][i] = 1;
        }
        g
    }
}

impl fmt::Display for AdeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.n)
    }
}

/// Sort key putting E before D before A and larger rank first.
fn display_rank(t: &AdeType) -> (u8, std::cmp::Reverse<usize>) {
    let f = match t.family {
        Family::E => 0,
        Family::D => 1,
        Family::A => 2,
    };
    (f, std::cmp::Reverse(t.n))
}

pub fn sort_types(ts: &mut [AdeType]) {
    ts.sort_by_key(display_rank);
}

/// `"2A3+A1"` style label of a multiset of types.
pub fn format_types(ts: &[AdeType]) -> String {
    let mut v = ts.to_vec();
    sort_types(&mut v);
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < v.len() {
        let mut j = i;
        while j < v.len() && v[j] == v[i] {
            j += 1;
        }
        let c = j - i;
        parts.push(if c == 1 {
            v[i].to_string()
        } else {
            format!("{c}{}", v[i])
        });
        i = j;
    }
    if parts.is_empty() {
        "smooth".into()
    } else {
        parts.join("+")
    }
}

/// Parses labels such as `"D4+3A1"`.
pub fn parse_types(s: &str) -> Option<Vec<AdeType>> {
    let mut out = Vec::new();
    for part in s.split('+') {
        let part = part.trim();
        let pos = part.find(['A', 'D', 'E'])?;
        let mult: usize = if pos == 0 { 1 } else { part[..pos].parse().ok()? };
        let family = match &part[pos..pos + 1] {
            "A" => Family::A,
            "D" => Family::D,
            _ => Family::E,
        };
        let n: usize = part[pos + 1..].parse().ok()?;
        out.extend(std::iter::repeat(AdeType::new(family, n)).take(mult));
    }
    sort_types(&mut out);
    Some(out)
}

/// One singular point: its ADE type and its components in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularPointData {
    pub id: String,
    pub ade: AdeType,
    /// Indices into `SingularityProfile::roots`, numbered `M_1, M_2, ...`.
    pub ordered: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularityProfile {
    pub form: IntersectionForm,
    pub roots: Vec<DivisorClass>,
    /// Connected components, each sorted, ordered by smallest index.
    pub components: Vec<Vec<usize>>,
    pub points: Vec<SingularPointData>,
    pub name: Option<String>,
}

impl SingularityProfile {
    pub fn degree(&self) -> i64 {
        self.form.degree()
    }

    pub fn point(&self, id: &str) -> Result<&SingularPointData> {
        self.points
            .iter()
            .find(|p| p.id == id)
            .ok_or_else(|| Error::UnknownPoint(id.to_string()))
    }

    pub fn types(&self) -> Vec<AdeType> {
        let mut v: Vec<AdeType> = self.points.iter().map(|p| p.ade).collect();
        sort_types(&mut v);
        v
    }

    /// Classes of a point's components in canonical order.
    pub fn point_classes(&self, p: &SingularPointData) -> Vec<DivisorClass> {
        p.ordered.iter().map(|&i| self.roots[i].clone()).collect()
    }
}

/// Serialized profile: degree, root list and an optional name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileJson {
    pub degree: i64,
    pub roots: Vec<DivisorClass>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl From<&SingularityProfile> for ProfileJson {
    fn from(p: &SingularityProfile) -> Self {
        ProfileJson {
            degree: p.degree(),
            roots: p.roots.clone(),
            name: p.name.clone(),
        }
    }
}

impl ProfileJson {
    pub fn validate(&self) -> Result<SingularityProfile> {
        let form = lattice_for_degree(self.degree)?;
        let mut p = validate_config(&form, &self.roots)?;
        p.name = self.name.clone();
        Ok(p)
    }
}

/// Checks that `roots` are the (-2)-curves of a Du Val configuration.
pub fn validate_config(form: &IntersectionForm, roots: &[DivisorClass]) -> Result<SingularityProfile> {
    let max = (9 - form.degree()).max(0) as usize;
    if roots.len() > max {
        return Err(Error::TooManyRoots {
            count: roots.len(),
            max,
        });
    }
    for (i, r) in roots.iter().enumerate() {
        form.check_len(r.len())?;
        if !form.is_root(r) {
            return Err(Error::NotARoot(i));
        }
    }
    let n = roots.len();
    let mut adj = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            let p = form.dot(&roots[i], &roots[j]);
            match p {
                0 => {}
                1 => {
                    adj[i].push(j);
                    adj[j].push(i);
                }
                value => return Err(Error::BadPairing { i, j, value }),
            }
        }
    }
    let mut comp_of = vec![usize::MAX; n];
    let mut components = Vec::new();
    for s in 0..n {
        if comp_of[s] != usize::MAX {
            continue;
        }
        let mut stack = vec![s];
        let mut comp = Vec::new();
        comp_of[s] = components.len();
        while let Some(v) = stack.pop() {
            comp.push(v);
            for &w in &adj[v] {
                if comp_of[w] == usize::MAX {
                    comp_of[w] = components.len();
                    stack.push(w);
                }
            }
        }
        comp.sort();
        components.push(comp);
    }
    let mut points = Vec::new();
    for (k, comp) in components.iter().enumerate() {
        let (ade, ordered) = classify(roots, &adj, comp).ok_or_else(|| Error::NotAde(comp.clone()))?;
        points.push(SingularPointData {
            id: format!("p{}", k + 1),
            ade,
            ordered,
        });
    }
    Ok(SingularityProfile {
        form: form.clone(),
        roots: roots.to_vec(),
        components,
        points,
        name: None,
    })
}

/// ADE label and canonical ordering of one component.
pub fn classify_component(profile: &SingularityProfile, component: &[usize]) -> Result<SingularPointData> {
    let n = profile.roots.len();
    let mut adj = vec![Vec::new(); n];
    for &i in component {
        for &j in component {
            if i != j && profile.form.dot(&profile.roots[i], &profile.roots[j]) == 1 {
                adj[i].push(j);
            }
        }
    }
    let mut comp = component.to_vec();
    comp.sort();
    let (ade, ordered) =
        classify(&profile.roots, &adj, &comp).ok_or_else(|| Error::NotAde(comp.clone()))?;
    let id = profile
        .points
        .iter()
        .find(|p| {
            let mut s = p.ordered.clone();
            s.sort();
            s == comp
        })
        .map(|p| p.id.clone())
        .unwrap_or_default();
    Ok(SingularPointData { id, ade, ordered })
}

fn walk_arm(adj: &[Vec<usize>], center: usize, first: usize) -> Vec<usize> {
    let mut arm = vec![first];
    let mut prev = center;
    let mut cur = first;
    while let Some(&next) = adj[cur].iter().find(|&&w| w != prev) {
        arm.push(next);
        prev = cur;
        cur = next;
    }
    arm
}

fn classify(roots: &[DivisorClass], adj: &[Vec<usize>], comp: &[usize]) -> Option<(AdeType, Vec<usize>)> {
    let n = comp.len();
    let edges: usize = comp.iter().map(|&v| adj[v].len()).sum::<usize>() / 2;
    if edges + 1 != n {
        return None;
    }
    let key = |order: &Vec<usize>| -> Vec<i64> {
        order.iter().flat_map(|&i| roots[i].0.iter().copied()).collect()
    };
    let branch: Vec<usize> = comp.iter().copied().filter(|&v| adj[v].len() >= 3).collect();
    if branch.is_empty() {
        let ends: Vec<usize> = comp.iter().copied().filter(|&v| adj[v].len() <= 1).collect();
        let forward = if n == 1 {
            vec![comp[0]]
        } else {
            let mut p = walk_arm(adj, usize::MAX, ends[0]);
            if p.len() != n {
                p = vec![ends[0]];
                p.extend(walk_arm(adj, ends[0], adj[ends[0]][0]));
            }
            p
        };
        let mut backward = forward.clone();
        backward.reverse();
        let best = if key(&backward) < key(&forward) { backward } else { forward };
        return Some((AdeType::a(n), best));
    }
    if branch.len() != 1 || adj[branch[0]].len() != 3 {
        return None;
    }
    let c = branch[0];
    let mut arms: Vec<Vec<usize>> = adj[c].iter().map(|&f| walk_arm(adj, c, f)).collect();
    arms.sort_by_key(|a| a.len());
    let lens: Vec<usize> = arms.iter().map(|a| a.len()).collect();
    let mut candidates: Vec<Vec<usize>> = Vec::new();
    let ade = match lens.as_slice() {
        [1, 1, r] => {
            let perms: Vec<[usize; 3]> = if *r == 1 {
                vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]]
            } else {
                vec![[0, 1, 2], [1, 0, 2]]
            };
            for p in perms {
                let mut o = vec![arms[p[0]][0], arms[p[1]][0], c];
                o.extend(arms[p[2]].iter().copied());
                candidates.push(o);
            }
            AdeType::d(r + 3)
        }
        [1, 2, 2] => {
            for (x, y) in [(1, 2), (2, 1)] {
                let (a, b) = (&arms[x], &arms[y]);
                candidates.push(vec![a[1], b[1], a[0], b[0], c, arms[0][0]]);
            }
            AdeType::e(6)
        }
        [1, 2, r] if *r == 3 || *r == 4 => {
            let mut o = vec![arms[1][1], arms[0][0], arms[1][0], c];
            o.extend(arms[2].iter().copied());
            candidates.push(o);
            AdeType::e(r + 4)
        }
        _ => return None,
    };
    let best = candidates.into_iter().min_by_key(|o| key(o))?;
    Some((ade, best))
}

/// `(Degree, Singularities, #Lines)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeTriplet {
    pub degree: i64,
    pub singularities: Vec<AdeType>,
    pub num_lines: usize,
}

impl TypeTriplet {
    pub fn singularity_label(&self) -> String {
        format_types(&self.singularities)
    }

    /// Label with the `(1)`/`(2)` suffix when the singularities alone are ambiguous.
    pub fn label(&self) -> String {
        let base = self.singularity_label();
        match line_variant_index(self) {
            Some(i) => format!("{base}({i})"),
            None => base,
        }
    }

    /// Primed notation used for the degree 1 and 2 types where it is customary.
    pub fn primed_label(&self) -> String {
        let base = self.singularity_label();
        let Some(i) = line_variant_index(self) else {
            return base;
        };
        let prime = PRIMED
            .iter()
            .find(|(d, s, _)| *d == self.degree && *s == base)
            .map(|(_, _, one_is_prime)| (i == 1) == *one_is_prime);
        match prime {
            Some(true) => format!("({base})'"),
            Some(false) => format!("({base})''"),
            None => format!("{base}({i})"),
        }
    }
}

impl fmt::Display for TypeTriplet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d={} {} #Lines={}", self.degree, self.label(), self.num_lines)
    }
}

/// Types whose singularities admit two line counts: `(degree, label, [fewer, more])`.
/// Frozen from exhaustive embedding search; `tests/variants.rs` re-derives them.
pub const LINE_VARIANTS: &[(i64, &str, [usize; 2])] = &[
    (6, "A1", [3, 4]),
    (4, "2A1", [8, 9]),
    (4, "A3", [4, 5]),
    (2, "A5+A1", [5, 6]),
    (2, "A5", [7, 8]),
    (2, "A3+2A1", [11, 12]),
    (2, "A3+A1", [15, 16]),
    (2, "4A1", [19, 20]),
    (1, "A7", [7, 8]),
    (1, "A5+A1", [20, 21]),
    (1, "2A3", [22, 23]),
    (1, "A3+2A1", [43, 44]),
    (1, "4A1", [76, 77]),
];

/// For each ambiguous type: is the `(1)` variant the primed one?
pub const PRIMED: &[(i64, &str, bool)] = &[
    (2, "A5+A1", true),
    (2, "A5", true),
    (2, "A3+2A1", true),
    (2, "A3+A1", true),
    (1, "A7", false),
    (1, "A5+A1", false),
];

/// `Some(1)` or `Some(2)` for ambiguous types, `None` otherwise.
pub fn line_variant_index(t: &TypeTriplet) -> Option<usize> {
    let label = format_types(&t.singularities);
    LINE_VARIANTS
        .iter()
        .find(|(d, s, _)| *d == t.degree && *s == label)
        .and_then(|(_, _, counts)| counts.iter().position(|&c| c == t.num_lines))
        .map(|i| i + 1)
}

pub fn surface_type(profile: &SingularityProfile) -> TypeTriplet {
    TypeTriplet {
        degree: profile.degree(),
        singularities: profile.types(),
        num_lines: lines_on_surface(profile).len(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    Prime,
    DoublePrime,
}

/// Prime iff a line meets the central root of the `A_{9-2d}` chain.
pub fn central_vertex_variant(profile: &SingularityProfile, point: &SingularPointData) -> Result<Variant> {
    let d = profile.degree();
    let want = AdeType::a((9 - 2 * d).max(0) as usize);
    if !(d == 1 || d == 2) || point.ade != want {
        return Err(Error::NotCentralChain(format!("{} on degree {d}", point.ade)));
    }
    let central = &profile.roots[point.ordered[point.ade.n / 2]];
    let hit = lines_on_surface(profile)
        .classes
        .iter()
        .any(|l| profile.form.dot(l, central) > 0);
    Ok(if hit { Variant::Prime } else { Variant::DoublePrime })
}

/// Construction labels `n°` for degree >= 3 types (rank-one surfaces with a rational singular point).
pub const CONSTRUCTION_CASES: &[(i64, &str, u8)] = &[
    (8, "A1", 9),
    (6, "A2+A1", 1),
    (6, "A2", 6),
    (6, "A1(1)", 1),
    (5, "A4", 1),
    (4, "D5", 1),
    (4, "A3+2A1", 10),
    (4, "D4", 6),
    (4, "A3+A1", 2),
    (4, "A2+2A1", 4),
    (4, "4A1", 8),
    (4, "A3(1)", 10),
    (4, "3A1", 5),
    (4, "A2", 4),
    (4, "2A1(1)", 8),
    (4, "A1", 5),
    (3, "E6", 1),
    (3, "A5+A1", 2),
    (3, "3A2", 2),
    (3, "A5", 2),
    (3, "2A2+A1", 3),
    (3, "D4", 1),
    (3, "2A2", 7),
    (3, "4A1", 3),
    (3, "A2", 2),
    (3, "A1", 3),
];

pub fn construction_case(degree: i64, t: &TypeTriplet) -> Option<u8> {
    if degree < 3 {
        return None;
    }
    let label = t.label();
    CONSTRUCTION_CASES
        .iter()
        .find(|(d, s, _)| *d == degree && *s == label)
        .map(|(_, _, n)| *n)
}

/// Every root in the integral span of the configuration is a nonnegative or
/// nonpositive combination of it, so the configuration is the full set of
/// (-2)-curves of a surface.
pub fn is_saturated(form: &IntersectionForm, roots: &[DivisorClass]) -> bool {
    if roots.is_empty() {
        return true;
    }
    // coefficients of r in the span are adj * (r.M_j) / det
    let (det, adj) = linalg::adjugate_small(&form.gram_of(roots));
    if det == 0 {
        return false;
    }
    'roots: for r in all_roots(form) {
        let pr: Vec<i64> = roots.iter().map(|m| form.dot(r, m)).collect();
        let mut c = Vec::with_capacity(roots.len());
        for row in &adj {
            let num: i64 = row.iter().zip(&pr).map(|(a, b)| a * b).sum();
            if num % det != 0 {
                continue 'roots;
            }
            c.push(num / det);
        }
        let rebuilt = DivisorClass::combination(
            form.rank(),
            &c.iter().zip(roots).map(|(&k, m)| (k, m)).collect::<Vec<_>>(),
        );
        if &rebuilt != r {
            continue;
        }
        if !(c.iter().all(|&x| x >= 0) || c.iter().all(|&x| x <= 0)) {
            return false;
        }
    }
    true
}

/// Visits each root set realizing the diagram of `types` once, as indices into
/// `all_roots(form)` in diagram order. The first vertex may be pinned. The
/// visitor returns `false` to stop. Saturation is left to the caller.
fn visit_diagram_sets(
    form: &IntersectionForm,
    types: &[AdeType],
    first: Option<&DivisorClass>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) {
    let total: usize = types.iter().map(|t| t.n).sum();
    let mut gram = vec![vec![0; total]; total];
    // identical consecutive components are ordered by their first root index
    let mut tied_to = vec![None; total];
    let mut offset = 0;
    let mut prev_start = 0;
    for (k, t) in types.iter().enumerate() {
        let g = t.gram();
        for i in 0..t.n {
            for j in 0..t.n {
                gram[offset + i][offset + j] = g[i][j];
            }
        }
        if k > 0 && types[k - 1] == *t && !(k == 1 && first.is_some()) {
            tied_to[offset] = Some(prev_start);
        }
        prev_start = offset;
        offset += t.n;
    }
    let pool = all_roots(form);
    let m = pool.len();
    let table: Vec<Vec<i8>> = pool
        .iter()
        .map(|a| pool.iter().map(|b| form.dot(a, b) as i8).collect())
        .collect();
    let nbrs: Vec<Vec<usize>> = table
        .iter()
        .map(|row| (0..m).filter(|&j| row[j] == 1).collect())
        .collect();
    let all: Vec<usize> = (0..m).collect();
    let pin = match first {
        Some(f) => match pool.iter().position(|r| r == f) {
            Some(i) => Some(i),
            None => return,
        },
        None => None,
    };
    let mut seen = std::collections::HashSet::new();
    let mut cur = Vec::with_capacity(total);
    // explicit stack of candidate cursors keeps this allocation-free per node
    let mut stack: Vec<(Vec<usize>, usize)> = Vec::new();
    let cands_for = |i: usize, cur: &[usize]| -> Vec<usize> {
        if i == 0 {
            if let Some(p) = pin {
                return vec![p];
            }
        }
        let base = match (0..i).find(|&j| gram[i][j] == 1) {
            Some(j) => &nbrs[cur[j]],
            None => &all,
        };
        let floor = tied_to[i].map(|s| cur[s]);
        base.iter()
            .copied()
            .filter(|&r| floor.is_none_or(|f| r > f))
            .filter(|&r| cur.iter().enumerate().all(|(j, &c)| i64::from(table[c][r]) == gram[i][j]))
            .collect()
    };
    if total == 0 {
        visit(&[]);
        return;
    }
    // invariant: the top frame chooses position cur.len()
    stack.push((cands_for(0, &cur), 0));
    while let Some((cands, pos)) = stack.last_mut() {
        if *pos == cands.len() {
            stack.pop();
            cur.pop();
            continue;
        }
        let r = cands[*pos];
        *pos += 1;
        cur.push(r);
        if cur.len() == total {
            let mut key = cur.clone();
            key.sort_unstable();
            if seen.insert(key) && !visit(&cur) {
                return;
            }
            cur.pop();
            continue;
        }
        let next = cands_for(cur.len(), &cur);
        stack.push((next, 0));
    }
}

/// Ordered embeddings of a Dynkin diagram as saturated sets of simple roots.
/// When `first` is given the first vertex is pinned to it. Results are
/// distinct as sets.
pub fn find_embeddings(
    form: &IntersectionForm,
    types: &[AdeType],
    first: Option<&DivisorClass>,
    limit: usize,
) -> Vec<Vec<DivisorClass>> {
    let pool = all_roots(form);
    let mut out = Vec::new();
    visit_diagram_sets(form, types, first, &mut |idx| {
        let classes: Vec<DivisorClass> = idx.iter().map(|&x| pool[x].clone()).collect();
        if is_saturated(form, &classes) {
            out.push(classes);
        }
        out.len() < limit
    });
    out
}

/// Distinct line counts over all embeddings of `types`, each with one witness.
/// Where the Weyl group is transitive on roots (every degree but 6) the first
/// vertex is pinned. Saturation is only checked for counts not yet witnessed.
pub fn line_count_spectrum(form: &IntersectionForm, types: &[AdeType]) -> BTreeMap<usize, Vec<DivisorClass>> {
    let pool = all_roots(form);
    let lines = all_lines(form);
    let pin = if form.degree() == 6 { None } else { pool.last().cloned() };
    let meets: Vec<Vec<bool>> = pool
        .iter()
        .map(|r| lines.iter().map(|l| form.dot(l, r) < 0).collect())
        .collect();
    let mut out = BTreeMap::new();
    visit_diagram_sets(form, types, pin.as_ref(), &mut |idx| {
        let n = (0..lines.len()).filter(|&l| idx.iter().all(|&r| !meets[r][l])).count();
        if !out.contains_key(&n) {
            let classes: Vec<DivisorClass> = idx.iter().map(|&x| pool[x].clone()).collect();
            if is_saturated(form, &classes) {
                out.insert(n, classes);
            }
        }
        true
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::standard_lattice;

    fn e(r: usize, plus: &[usize], minus: &[usize], ell: i64) -> DivisorClass {
        let mut v = vec![0; r];
        v[0] = ell;
        for &i in plus {
            v[i] += 1;
        }
        for &i in minus {
            v[i] -= 1;
        }
        DivisorClass(v)
    }

    #[test]
    fn labels_round_trip() {
        let t = parse_types("D4+3A1").unwrap();
        assert_eq!(format_types(&t), "D4+3A1");
        assert_eq!(format_types(&parse_types("A1+A5+A2").unwrap()), "A5+A2+A1");
        assert_eq!(format_types(&[]), "smooth");
    }

    #[test]
    fn three_a2_on_cubic() {
        let f = standard_lattice(3).unwrap();
        let roots = vec![
            e(7, &[1], &[2], 0),
            e(7, &[2], &[3], 0),
            e(7, &[4], &[5], 0),
            e(7, &[5], &[6], 0),
            e(7, &[], &[1, 4, 2], 1),
            e(7, &[], &[3, 5, 6], 1),
        ];
        // the last two are not an A2 with each other; just check validation runs
        let r = validate_config(&f, &roots[..4]).unwrap();
        assert_eq!(format_types(&r.types()), "2A2");
        assert!(validate_config(&f, &[roots[0].clone(), roots[0].clone()]).is_err());
    }

    #[test]
    fn too_many_roots() {
        let f = standard_lattice(2).unwrap();
        let mut roots: Vec<_> = (1..7).map(|i| e(8, &[i], &[i + 1], 0)).collect();
        roots.push(e(8, &[], &[1, 2, 3], 1));
        let mut eight = roots.clone();
        eight.push(e(8, &[], &[4, 5, 6], 1));
        assert!(matches!(validate_config(&f, &eight), Err(Error::TooManyRoots { count: 8, max: 7 })));
        assert_eq!(validate_config(&f, &roots).unwrap().types(), vec![AdeType::e(7)]);
    }

    #[test]
    fn fork_orderings() {
        let f = standard_lattice(4).unwrap();
        // D5 from e1-e2, e2-e3, e3-e4, e4-e5 and l-e1-e2-e3
        let roots = vec![
            e(6, &[1], &[2], 0),
            e(6, &[2], &[3], 0),
            e(6, &[3], &[4], 0),
            e(6, &[4], &[5], 0),
            e(6, &[], &[1, 2, 3], 1),
        ];
        let p = validate_config(&f, &roots).unwrap();
        let pt = &p.points[0];
        assert_eq!(pt.ade, AdeType::d(5));
        let cls = p.point_classes(pt);
        let g = f.gram_of(&cls);
        assert_eq!(g, AdeType::d(5).gram());
    }
}
