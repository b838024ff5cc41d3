//! Galois actions as lattice isometries, decorated singularity types and the
//! rank-one obstructions.
//!
//! Matrices act on column coefficient vectors: the image of `D` is `g * D`.
//! The Picard rank over `k` is modeled as
//! `rho_k(S) = rank(Pic(S~)^G) - #(root orbits)`.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::config::{central_vertex_variant, AdeType, Family, SingularityProfile, Variant};
use crate::curves::lines_on_surface;
use crate::error::{Error, Result};
use crate::lattice::{apply, DivisorClass, IntersectionForm, Model};
use crate::linalg;

pub type Matrix = Vec<Vec<i64>>;

/// Hard cap on the size of a generated group.
pub const GROUP_CAP: usize = 1_000_000;

/// Wording attached to every report that depends on the rank model.
pub const RHO_MODEL_NOTE: &str =
    "rho_k(S) is modeled as the rank of the Galois-fixed sublattice minus the number of root orbits";

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaloisAction {
    pub generators: Vec<Matrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceOverK {
    pub profile: SingularityProfile,
    pub action: GaloisAction,
    /// Has the exceptional set of this point a `k`-point? Keyed by point id.
    pub point_flags: BTreeMap<String, bool>,
    pub rank_one_assertion: Option<bool>,
}

impl SurfaceOverK {
    pub fn new(profile: SingularityProfile, generators: Vec<Matrix>) -> Self {
        SurfaceOverK {
            profile,
            action: GaloisAction { generators },
            point_flags: BTreeMap::new(),
            rank_one_assertion: None,
        }
    }

    pub fn with_flag(mut self, id: &str, flag: bool) -> Self {
        self.point_flags.insert(id.to_string(), flag);
        self
    }

    pub fn degree(&self) -> i64 {
        self.profile.degree()
    }
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let m = b[0].len();
    (0..n)
        .map(|i| (0..m).map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

/// Index permutation induced by `g` on a sorted or unsorted class list.
fn induced_perm(g: &Matrix, classes: &[DivisorClass]) -> Option<Vec<usize>> {
    let index: BTreeMap<&DivisorClass, usize> = classes.iter().enumerate().map(|(i, c)| (c, i)).collect();
    classes.iter().map(|c| index.get(&apply(g, c)).copied()).collect()
}

fn union_find_orbits(n: usize, perms: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nx = p[y];
            p[y] = r;
            y = nx;
        }
        r
    }
    for p in perms {
        for (i, &j) in p.iter().enumerate() {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    groups.into_values().collect()
}

/// Order of the group generated by `gens`, or an error past `cap`.
pub fn group_order(rank: usize, gens: &[Matrix], cap: usize) -> Result<usize> {
    let flat = |m: &Matrix| -> Option<Box<[i16]>> {
        m.iter().flatten().map(|&x| i16::try_from(x).ok()).collect()
    };
    let id = identity(rank);
    let mut seen: HashSet<Box<[i16]>> = HashSet::new();
    seen.insert(flat(&id).expect("identity fits"));
    let mut queue = VecDeque::from([id]);
    while let Some(m) = queue.pop_front() {
        for g in gens {
            let p = mat_mul(g, &m);
            let key = flat(&p).ok_or(Error::GroupTooLarge(cap))?;
            if seen.insert(key) {
                if seen.len() > cap {
                    return Err(Error::GroupTooLarge(cap));
                }
                queue.push_back(p);
            }
        }
    }
    Ok(seen.len())
}

/// Checks every invariant of the action and returns the group order.
pub fn validate_action(surface: &SurfaceOverK) -> Result<usize> {
    validate_with_cap(surface, GROUP_CAP)
}

pub fn validate_with_cap(surface: &SurfaceOverK, cap: usize) -> Result<usize> {
    let form = &surface.profile.form;
    let n = form.rank();
    let lines = lines_on_surface(&surface.profile).classes;
    for (i, g) in surface.action.generators.iter().enumerate() {
        if g.len() != n || g.iter().any(|r| r.len() != n) {
            return Err(Error::BadMatrixShape {
                gen: i,
                rows: g.len(),
                cols: g.first().map_or(0, |r| r.len()),
                rank: n,
            });
        }
        if !form.preserves(g) {
            return Err(Error::NotIsometry(i));
        }
        if &apply(g, form.canonical()) != form.canonical() {
            return Err(Error::CanonicalNotFixed(i));
        }
        if induced_perm(g, &surface.profile.roots).is_none() {
            return Err(Error::RootsNotPermuted(i));
        }
        if induced_perm(g, &lines).is_none() {
            return Err(Error::LinesNotPermuted(i));
        }
    }
    group_order(n, &surface.action.generators, cap)
}

/// Everything derived from the action, computed once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisAnalysis {
    pub group_order: usize,
    /// Per generator, the permutation of root indices.
    pub root_perms: Vec<Vec<usize>>,
    pub root_orbits: Vec<Vec<usize>>,
    /// Ids of points whose component set is Galois-stable.
    pub rational_points: Vec<String>,
    /// Orbits among each rational point's components.
    pub per_point_drop: BTreeMap<String, usize>,
    /// Rank of the fixed sublattice, i.e. `rho_k(S~)`.
    pub fixed_rank: usize,
    /// Flags with defaults filled in for rational points.
    pub flags: BTreeMap<String, bool>,
    pub warnings: Vec<String>,
}

impl GaloisAnalysis {
    pub fn rho_tilde(&self) -> usize {
        self.fixed_rank
    }

    pub fn total_drop(&self) -> usize {
        self.root_orbits.len()
    }

    /// `rho_k(S)` under the fixed-rank-minus-orbits model.
    pub fn rho(&self) -> i64 {
        self.fixed_rank as i64 - self.root_orbits.len() as i64
    }

    pub fn is_rational(&self, id: &str) -> bool {
        self.rational_points.iter().any(|p| p == id)
    }
}

/// Rank of the sublattice fixed by every generator.
pub fn fixed_rank(rank: usize, gens: &[Matrix]) -> usize {
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for g in gens {
        for (i, row) in g.iter().enumerate() {
            let mut r = row.clone();
            r[i] -= 1;
            rows.push(r);
        }
    }
    if rows.is_empty() {
        return rank;
    }
    rank - linalg::rank_small(&rows)
}

pub fn analyze(surface: &SurfaceOverK) -> Result<GaloisAnalysis> {
    let group_order = validate_action(surface)?;
    let profile = &surface.profile;
    let gens = &surface.action.generators;
    let root_perms: Vec<Vec<usize>> = gens
        .iter()
        .map(|g| induced_perm(g, &profile.roots).expect("validated"))
        .collect();
    let root_orbits = union_find_orbits(profile.roots.len(), &root_perms);
    let mut rational_points = Vec::new();
    let mut per_point_drop = BTreeMap::new();
    for (pt, comp) in profile.points.iter().zip(&profile.components) {
        let stable = root_perms.iter().all(|p| comp.iter().all(|&i| comp.contains(&p[i])));
        if stable {
            rational_points.push(pt.id.clone());
            let drop = root_orbits.iter().filter(|o| comp.contains(&o[0])).count();
            per_point_drop.insert(pt.id.clone(), drop);
        }
    }
    let mut warnings = Vec::new();
    for key in surface.point_flags.keys() {
        profile.point(key)?;
        if !rational_points.contains(key) {
            return Err(Error::NotRational(key.clone()));
        }
    }
    let mut flags = BTreeMap::new();
    for id in &rational_points {
        let f = match surface.point_flags.get(id) {
            Some(&f) => f,
            None => {
                warnings.push(format!("no rational-point flag for {id}; assuming true"));
                true
            }
        };
        flags.insert(id.clone(), f);
    }
    Ok(GaloisAnalysis {
        group_order,
        root_perms,
        root_orbits,
        rational_points,
        per_point_drop,
        fixed_rank: fixed_rank(profile.form.rank(), gens),
        flags,
        warnings,
    })
}

/// Root orbits plus the k-rational point ids.
pub fn orbits(surface: &SurfaceOverK) -> Result<(Vec<Vec<usize>>, Vec<String>)> {
    let a = analyze(surface)?;
    Ok((a.root_orbits, a.rational_points))
}

/// `(total, per_point)` drops.
pub fn rho_drop(surface: &SurfaceOverK) -> Result<(usize, BTreeMap<String, usize>)> {
    let a = analyze(surface)?;
    Ok((a.total_drop(), a.per_point_drop))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Minus,
    Plus,
    PlusPlus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Decoration {
    pub base: AdeType,
    pub sign: Sign,
    pub variant: Option<Variant>,
}

impl fmt::Display for Decoration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.sign {
            Sign::Minus => "-",
            Sign::Plus => "+",
            Sign::PlusPlus => "++",
        };
        match self.variant {
            None => write!(f, "{}^{sign}", self.base),
            Some(Variant::Prime) => write!(f, "({}^{sign})'", self.base),
            Some(Variant::DoublePrime) => write!(f, "({}^{sign})''", self.base),
        }
    }
}

/// Decoration from a drop count and the rational-point flag.
pub fn decoration_rule(base: AdeType, drop: usize, has_k_point: bool) -> Sign {
    match base.family {
        Family::A if base.n == 1 => {
            if has_k_point {
                Sign::Plus
            } else {
                Sign::PlusPlus
            }
        }
        Family::A => {
            if drop == base.n {
                Sign::Minus
            } else if has_k_point {
                Sign::Plus
            } else {
                Sign::PlusPlus
            }
        }
        Family::D | Family::E => {
            if drop == base.n {
                Sign::Minus
            } else {
                Sign::Plus
            }
        }
    }
}

pub fn decorate_with(surface: &SurfaceOverK, a: &GaloisAnalysis, id: &str) -> Result<Decoration> {
    let pt = surface.profile.point(id)?;
    if !a.is_rational(id) {
        return Err(Error::NotRational(id.to_string()));
    }
    let sign = decoration_rule(pt.ade, a.per_point_drop[id], a.flags[id]);
    let variant = central_vertex_variant(&surface.profile, pt).ok();
    Ok(Decoration {
        base: pt.ade,
        sign,
        variant,
    })
}

pub fn decorate_point(surface: &SurfaceOverK, id: &str) -> Result<Decoration> {
    decorate_with(surface, &analyze(surface)?, id)
}

/// Decorations of all k-rational points, keyed by id.
pub fn decorations(surface: &SurfaceOverK, a: &GaloisAnalysis) -> Result<BTreeMap<String, Decoration>> {
    a.rational_points
        .iter()
        .map(|id| Ok((id.clone(), decorate_with(surface, a, id)?)))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Obstruction {
    /// A Galois orbit of pairwise disjoint lines missing every root.
    StableDisjointLines(Vec<DivisorClass>),
    /// Everything is individually fixed but there are fewer than `9 - d` roots.
    AllFixedFewRoots { roots: usize, bound: usize },
    /// The modeled `rho_k(S)` differs from one.
    RhoNotOne(i64),
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::StableDisjointLines(ls) => {
                write!(f, "(i) Galois-stable disjoint lines avoiding all roots: {} line(s)", ls.len())
            }
            Obstruction::AllFixedFewRoots { roots, bound } => write!(
                f,
                "(ii) all roots and lines are fixed and there are {roots} < {bound} roots"
            ),
            Obstruction::RhoNotOne(r) => write!(f, "(iii) modeled rho_k(S) = {r}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankOneReport {
    pub ok: bool,
    pub obstruction: Option<Obstruction>,
    pub rho_tilde: usize,
    pub root_orbits: usize,
    pub rho: i64,
    /// True when a failing check was overridden by the user's assertion.
    pub overridden: bool,
    pub warnings: Vec<String>,
}

pub fn rank_one_with(surface: &SurfaceOverK, a: &GaloisAnalysis) -> RankOneReport {
    let profile = &surface.profile;
    let form = &profile.form;
    let lines = lines_on_surface(profile).classes;
    let line_perms: Vec<Vec<usize>> = surface
        .action
        .generators
        .iter()
        .map(|g| induced_perm(g, &lines).expect("validated"))
        .collect();
    let line_orbits = union_find_orbits(lines.len(), &line_perms);
    let mut obstruction = None;
    for orbit in &line_orbits {
        let avoids = orbit
            .iter()
            .all(|&i| profile.roots.iter().all(|m| form.dot(&lines[i], m) == 0));
        let disjoint = orbit
            .iter()
            .all(|&i| orbit.iter().all(|&j| i == j || form.dot(&lines[i], &lines[j]) == 0));
        if avoids && disjoint {
            obstruction = Some(Obstruction::StableDisjointLines(
                orbit.iter().map(|&i| lines[i].clone()).collect(),
            ));
            break;
        }
    }
    let bound = (9 - profile.degree()).max(0) as usize;
    if obstruction.is_none() {
        let trivial = a.root_orbits.iter().all(|o| o.len() == 1) && line_orbits.iter().all(|o| o.len() == 1);
        if trivial && profile.roots.len() < bound {
            obstruction = Some(Obstruction::AllFixedFewRoots {
                roots: profile.roots.len(),
                bound,
            });
        }
    }
    if obstruction.is_none() && a.rho() != 1 {
        obstruction = Some(Obstruction::RhoNotOne(a.rho()));
    }
    let mut warnings = vec![RHO_MODEL_NOTE.to_string()];
    let mut ok = obstruction.is_none();
    let mut overridden = false;
    if !ok && surface.rank_one_assertion == Some(true) {
        warnings.push(format!(
            "rank one asserted by input despite obstruction {}",
            obstruction.as_ref().expect("not ok")
        ));
        ok = true;
        overridden = true;
    }
    RankOneReport {
        ok,
        obstruction,
        rho_tilde: a.fixed_rank,
        root_orbits: a.root_orbits.len(),
        rho: a.rho(),
        overridden,
        warnings,
    }
}

pub fn rank_one_check(surface: &SurfaceOverK) -> Result<RankOneReport> {
    Ok(rank_one_with(surface, &analyze(surface)?))
}

/// Isometry permuting the exceptional classes: `e_i -> e_{perm[i-1]}` (1-based targets), `l` fixed.
pub fn permutation_matrix(form: &IntersectionForm, perm: &[usize]) -> Result<Matrix> {
    let n = form.rank();
    if form.model() != Model::BlowUp || perm.len() != n - 1 {
        return Err(Error::DimensionMismatch {
            expected: n - 1,
            found: perm.len(),
        });
    }
    let mut m = vec![vec![0; n]; n];
    m[0][0] = 1;
    for (i, &t) in perm.iter().enumerate() {
        if t == 0 || t >= n {
            return Err(Error::OutOfRange(format!("permutation target {t}")));
        }
        m[t][i + 1] = 1;
    }
    Ok(m)
}

/// The unique linear map sending `sources[i]` to `images[i]`, if it is integral.
/// The sources must span the lattice over Q.
pub fn isometry_from_images(form: &IntersectionForm, sources: &[DivisorClass], images: &[DivisorClass]) -> Option<Matrix> {
    let n = form.rank();
    let mut basis: Vec<usize> = Vec::new();
    for i in 0..sources.len() {
        let mut trial: Vec<Vec<i64>> = basis.iter().map(|&j| sources[j].0.clone()).collect();
        trial.push(sources[i].0.clone());
        if linalg::rank_int(&trial) == trial.len() {
            basis.push(i);
            if basis.len() == n {
                break;
            }
        }
    }
    if basis.len() != n {
        return None;
    }
    matrix_from_basis(
        &basis.iter().map(|&i| sources[i].clone()).collect::<Vec<_>>(),
        &basis.iter().map(|&i| images[i].clone()).collect::<Vec<_>>(),
    )
    .filter(|t| sources.iter().zip(images).all(|(s, i)| &apply(t, s) == i))
}

/// `T` with `T * b_i = c_i` for a basis `b`.
fn matrix_from_basis(b: &[DivisorClass], c: &[DivisorClass]) -> Option<Matrix> {
    let n = b.len();
    // B has columns b_i; T = C B^{-1}
    let bm: Vec<Vec<linalg::Q>> = (0..n).map(|r| (0..n).map(|k| linalg::q(b[k].0[r])).collect()).collect();
    let binv = linalg::inverse(&bm)?;
    let mut t = vec![vec![0i64; n]; n];
    for r in 0..n {
        for col in 0..n {
            let mut s = linalg::q(0);
            for k in 0..n {
                s += linalg::q(c[k].0[r]) * &binv[k][col];
            }
            if !s.is_integer() {
                return None;
            }
            t[r][col] = i64::try_from(s.to_integer()).ok()?;
        }
    }
    Some(t)
}

/// All isometries fixing `K` that permute the profile's roots, found by
/// backtracking over images of a spanning set of roots, lines and `K`.
pub fn configuration_symmetries(profile: &SingularityProfile, cap: usize) -> Result<Vec<Matrix>> {
    let form = &profile.form;
    let n = form.rank();
    let lines = lines_on_surface(profile).classes;
    // kinds: 0 root, 1 line, 2 the canonical class (always fixed)
    let mut verts: Vec<(DivisorClass, u8)> = profile.roots.iter().map(|r| (r.clone(), 0)).collect();
    verts.extend(lines.iter().map(|l| (l.clone(), 1)));
    verts.push((form.canonical().clone(), 2));
    // invariant signature: kind plus sorted pairings with everything
    let sig: Vec<(u8, Vec<i64>)> = verts
        .iter()
        .map(|(v, k)| {
            let mut p: Vec<i64> = verts.iter().map(|(w, _)| form.dot(v, w)).collect();
            p.sort();
            (*k, p)
        })
        .collect();
    // spanning subset, each new element chosen to meet earlier ones where possible
    let mut basis: Vec<usize> = Vec::new();
    let mut remaining: Vec<usize> = (0..verts.len()).collect();
    let mut current: Vec<Vec<i64>> = Vec::new();
    while basis.len() < n && !remaining.is_empty() {
        let mut pick = None;
        let mut best = -1i64;
        for (pos, &i) in remaining.iter().enumerate() {
            let mut trial = current.clone();
            trial.push(verts[i].0 .0.clone());
            if linalg::rank_int(&trial) != trial.len() {
                continue;
            }
            let score = basis.iter().filter(|&&b| form.dot(&verts[b].0, &verts[i].0) != 0).count() as i64;
            if score > best {
                best = score;
                pick = Some(pos);
            }
        }
        let Some(pos) = pick else { break };
        let i = remaining.remove(pos);
        current.push(verts[i].0 .0.clone());
        basis.push(i);
    }
    if basis.len() != n {
        return Err(Error::Hypothesis("roots, lines and K do not span the lattice".into()));
    }
    let all: Vec<DivisorClass> = verts.iter().map(|(v, _)| v.clone()).collect();
    let index: BTreeMap<&DivisorClass, usize> = all.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let src: Vec<DivisorClass> = basis.iter().map(|&i| all[i].clone()).collect();
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn go(
        form: &IntersectionForm,
        basis: &[usize],
        all: &[DivisorClass],
        sig: &[(u8, Vec<i64>)],
        index: &BTreeMap<&DivisorClass, usize>,
        src: &[DivisorClass],
        chosen: &mut Vec<usize>,
        out: &mut Vec<Matrix>,
        cap: usize,
    ) -> Result<()> {
        let k = chosen.len();
        if k == basis.len() {
            let imgs: Vec<DivisorClass> = chosen.iter().map(|&i| all[i].clone()).collect();
            if let Some(t) = matrix_from_basis(src, &imgs) {
                let canonical = &all[all.len() - 1];
                if &apply(&t, canonical) == canonical && all.iter().all(|c| index.contains_key(&apply(&t, c))) {
                    if out.len() >= cap {
                        return Err(Error::GroupTooLarge(cap));
                    }
                    out.push(t);
                }
            }
            return Ok(());
        }
        let b = basis[k];
        for cand in 0..all.len() {
            if sig[cand] != sig[b] || chosen.contains(&cand) {
                continue;
            }
            let ok = (0..k).all(|j| form.dot(&all[chosen[j]], &all[cand]) == form.dot(&all[basis[j]], &all[b]));
            if ok {
                chosen.push(cand);
                go(form, basis, all, sig, index, src, chosen, out, cap)?;
                chosen.pop();
            }
        }
        Ok(())
    }
    go(form, &basis, &all, &sig, &index, &src, &mut chosen, &mut out, cap)?;
    out.sort();
    Ok(out)
}

/// Orbit partition of the roots under the group generated by `gens`.
pub fn root_orbits_of(profile: &SingularityProfile, gens: &[Matrix]) -> Option<Vec<Vec<usize>>> {
    let perms: Option<Vec<Vec<usize>>> = gens.iter().map(|g| induced_perm(g, &profile.roots)).collect();
    Some(union_find_orbits(profile.roots.len(), &perms?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::validate_config;
    use crate::lattice::standard_lattice;

    #[test]
    fn identity_has_order_one() {
        let f = standard_lattice(4).unwrap();
        let r = DivisorClass(vec![0, 1, -1, 0, 0, 0]);
        let p = validate_config(&f, &[r]).unwrap();
        let s = SurfaceOverK::new(p, vec![identity(6)]);
        assert_eq!(validate_action(&s).unwrap(), 1);
        let a = analyze(&s).unwrap();
        assert_eq!(a.root_orbits, vec![vec![0]]);
        assert_eq!(a.fixed_rank, 6);
    }

    #[test]
    fn decoration_table() {
        assert_eq!(decoration_rule(AdeType::a(1), 1, true), Sign::Plus);
        assert_eq!(decoration_rule(AdeType::a(1), 1, false), Sign::PlusPlus);
        assert_eq!(decoration_rule(AdeType::a(3), 3, false), Sign::Minus);
        assert_eq!(decoration_rule(AdeType::a(3), 2, false), Sign::PlusPlus);
        assert_eq!(decoration_rule(AdeType::e(6), 4, false), Sign::Plus);
        assert_eq!(decoration_rule(AdeType::d(5), 5, true), Sign::Minus);
    }

    #[test]
    fn swap_is_an_isometry() {
        let f = standard_lattice(4).unwrap();
        let m = permutation_matrix(&f, &[2, 1, 3, 4, 5]).unwrap();
        assert!(f.preserves(&m));
        assert_eq!(apply(&m, f.canonical()), *f.canonical());
        assert_eq!(group_order(6, &[m], 10).unwrap(), 2);
    }
}
