//! Groups of cube-free order. Odd order ⇔ bipartite complement; solvable
//! even order ⇔ triangle-free complement that is bipartite after one vertex
//! deletion; non-solvable ⇔ `PSL(2,q) × M` with `|M|` odd, whose complement
//! prime graph is a complete tripartite `K_{1,a,b}` core (the characteristic
//! `q` and the two halves (q∓1)/2), isolated vertices for primes shared with
//! `M`, and a bipartite remainder.

use serde::{Deserialize, Serialize};

use super::{indices_of, labels_of};
use crate::error::{Error, Result};
use crate::graphcore::{
    bipartite_after_one_vertex, components_active, connected_components, is_bipartite, is_triangle_free,
    two_color_active, Graph,
};
use crate::numtheory::{factorize, is_prime, psl2_cubefree_profile, PslProfile};

pub const DEFAULT_Q_BOUND: u64 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubefreeOptions {
    /// Largest characteristic tried.
    pub q_bound: u64,
    /// Allow the characteristic itself to be a shared prime (an isolated
    /// vertex of the complement).
    pub char_in_s: bool,
}

impl Default for CubefreeOptions {
    fn default() -> Self {
        CubefreeOptions { q_bound: DEFAULT_Q_BOUND, char_in_s: false }
    }
}

/// Witness for the non-solvable case. `minus_side`/`plus_side` are the
/// vertices standing for primes of (q−1)/2 and (q+1)/2 that stay in the
/// core; `s_minus`/`s_plus` are isolated vertices standing for shared primes
/// of those halves.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonSolvableWitness {
    pub q: u64,
    pub profile: PslProfile,
    pub characteristic: String,
    pub characteristic_in_s: bool,
    pub minus_side: Vec<String>,
    pub plus_side: Vec<String>,
    pub s_minus: Vec<String>,
    pub s_plus: Vec<String>,
    pub bipartite_part: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case")]
pub enum CubeFreeVerdict {
    OddOrder { classes: Vec<Vec<String>> },
    SolvableEven { removed: Option<String>, classes: Vec<Vec<String>> },
    NonSolvable(NonSolvableWitness),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NonSolvableMiss {
    /// No way to split the complement into a PSL core and a bipartite rest.
    Structural { reason: String },
    /// The shape fits, but no characteristic up to `q_bound` has matching
    /// counts.
    QBoundExhausted { q_bound: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubefreeReport {
    pub verdicts: Vec<CubeFreeVerdict>,
    pub nonsolvable_miss: Option<NonSolvableMiss>,
}

impl CubefreeReport {
    pub fn is_accept(&self) -> bool {
        !self.verdicts.is_empty()
    }

    pub fn nonsolvable(&self) -> Option<&NonSolvableWitness> {
        self.verdicts.iter().find_map(|v| match v {
            CubeFreeVerdict::NonSolvable(w) => Some(w),
            _ => None,
        })
    }
}

/// A candidate core in the complement. `c == None` means the characteristic
/// is taken from the isolated vertices.
#[derive(Clone, Debug)]
struct Core {
    c: Option<usize>,
    a: Vec<usize>,
    b: Vec<usize>,
    /// Isolated vertices consumed by the core itself.
    used: Vec<usize>,
}

struct Layout {
    cores: Vec<Core>,
    isolated: Vec<usize>,
}

/// `Some(parts)` when `ys` induce a complete multipartite graph in `c`:
/// parts are independent and pairwise fully joined.
fn multipartite_parts(c: &Graph, ys: &[usize]) -> Option<Vec<Vec<usize>>> {
    let n = c.n();
    let mut active = vec![false; n];
    for &y in ys {
        active[y] = true;
    }
    let parts = components_active(&c.complement(), &active);
    for (i, p) in parts.iter().enumerate() {
        for (j, &u) in p.iter().enumerate() {
            if p[j + 1..].iter().any(|&v| c.has_edge(u, v)) {
                return None;
            }
            for q in &parts[i + 1..] {
                if q.iter().any(|&v| !c.has_edge(u, v)) {
                    return None;
                }
            }
        }
    }
    Some(parts)
}

fn layout(c: &Graph, char_in_s: bool) -> std::result::Result<Layout, String> {
    let comps = components_active(c, &vec![true; c.n()]);
    let isolated: Vec<usize> = comps.iter().filter(|x| x.len() == 1).map(|x| x[0]).collect();
    let big: Vec<&Vec<usize>> = comps.iter().filter(|x| x.len() > 1).collect();
    let odd: Vec<bool> = big
        .iter()
        .map(|x| {
            let mut act = vec![false; c.n()];
            for &v in x.iter() {
                act[v] = true;
            }
            two_color_active(c, &act).is_err()
        })
        .collect();
    let odd_count = odd.iter().filter(|&&o| o).count();
    let mut cores = Vec::new();
    for (i, x) in big.iter().enumerate() {
        if odd_count > usize::from(odd[i]) {
            continue;
        }
        for &v in x.iter() {
            if x.iter().any(|&u| u != v && !c.has_edge(u, v)) {
                continue;
            }
            let rest: Vec<usize> = x.iter().copied().filter(|&u| u != v).collect();
            if let Some(parts) = multipartite_parts(c, &rest) {
                if parts.len() <= 2 {
                    let mut it = parts.into_iter();
                    let a = it.next().unwrap_or_default();
                    let b = it.next().unwrap_or_default();
                    cores.push(Core { c: Some(v), a, b, used: vec![] });
                }
            }
        }
        if char_in_s {
            if let Some(parts) = multipartite_parts(c, x) {
                if parts.len() == 2 {
                    cores.push(Core { c: None, a: parts[0].clone(), b: parts[1].clone(), used: vec![] });
                }
            }
        }
    }
    if char_in_s && odd_count == 0 {
        for k in 1..=isolated.len() {
            let a = isolated[..k].to_vec();
            cores.push(Core { c: None, a: a.clone(), b: vec![], used: a });
        }
    }
    if cores.is_empty() {
        let reason = if odd_count > 1 {
            "more than one component of the complement is not bipartite".to_string()
        } else {
            "no component of the complement has the shape K_{1,a,b}".to_string()
        };
        return Err(reason);
    }
    Ok(Layout { cores, isolated })
}

/// Count of odd primes dividing `m` exactly once.
fn odd_simple_primes(m: u64) -> usize {
    factorize(m).0.iter().filter(|&&(p, e)| p != 2 && e == 1).count()
}

fn try_core(c: &Graph, lay: &Layout, core: &Core, prof: PslProfile) -> Option<NonSolvableWitness> {
    let om = odd_simple_primes(prof.minus_half());
    let on = odd_simple_primes(prof.plus_half());
    let free: Vec<usize> = lay.isolated.iter().copied().filter(|v| !core.used.contains(v)).collect();
    let char_slot = usize::from(core.c.is_none());
    for swap in [false, true] {
        let (minus, plus) = if swap { (&core.b, &core.a) } else { (&core.a, &core.b) };
        if minus.len() > prof.m || plus.len() > prof.n {
            continue;
        }
        let (s1, s2) = (prof.m - minus.len(), prof.n - plus.len());
        if s1 > om || s2 > on || s1 + s2 + char_slot > free.len() {
            continue;
        }
        let s_minus = free[..s1].to_vec();
        let s_plus = free[s1..s1 + s2].to_vec();
        let ch = core.c.unwrap_or_else(|| free[s1 + s2]);
        let mut taken = vec![false; c.n()];
        for &v in minus.iter().chain(plus).chain(&s_minus).chain(&s_plus) {
            taken[v] = true;
        }
        taken[ch] = true;
        return Some(NonSolvableWitness {
            q: prof.q,
            profile: prof,
            characteristic: c.label(ch).to_string(),
            characteristic_in_s: core.c.is_none(),
            minus_side: labels_of(c, minus.iter().copied()),
            plus_side: labels_of(c, plus.iter().copied()),
            s_minus: labels_of(c, s_minus),
            s_plus: labels_of(c, s_plus),
            bipartite_part: labels_of(c, (0..c.n()).filter(|&v| !taken[v])),
        });
    }
    None
}

fn search(c: &Graph, opts: &CubefreeOptions, qs: impl Iterator<Item = u64>) -> std::result::Result<NonSolvableWitness, NonSolvableMiss> {
    let lay = layout(c, opts.char_in_s).map_err(|reason| NonSolvableMiss::Structural { reason })?;
    for q in qs {
        let Some(prof) = psl2_cubefree_profile(q) else { continue };
        for core in &lay.cores {
            if let Some(w) = try_core(c, &lay, core, prof) {
                return Ok(w);
            }
        }
    }
    Err(NonSolvableMiss::QBoundExhausted { q_bound: opts.q_bound })
}

/// Every cube-free case that applies to `f`. An empty verdict list means
/// rejection; `nonsolvable_miss` then says whether the non-solvable search
/// failed structurally or ran out of characteristics.
pub fn is_cubefree_realizable(f: &Graph, opts: &CubefreeOptions) -> Result<CubefreeReport> {
    f.check_cap()?;
    let c = f.complement();
    let mut verdicts = Vec::new();
    if let Ok(col) = is_bipartite(&c) {
        verdicts.push(CubeFreeVerdict::OddOrder { classes: col.class_labels(&c) });
    }
    if is_triangle_free(&c).is_none() {
        if c.is_empty() {
            verdicts.push(CubeFreeVerdict::SolvableEven { removed: None, classes: vec![vec![], vec![]] });
        } else if let Some((v, col)) = bipartite_after_one_vertex(&c) {
            verdicts.push(CubeFreeVerdict::SolvableEven {
                removed: Some(c.label(v).to_string()),
                classes: col.class_labels(&c.without_vertex(v)),
            });
        }
    }
    let miss = match search(&c, opts, 5..=opts.q_bound) {
        Ok(w) => {
            verdicts.push(CubeFreeVerdict::NonSolvable(w));
            None
        }
        Err(m) => Some(m),
    };
    Ok(CubefreeReport { verdicts, nonsolvable_miss: miss })
}

/// The non-solvable witness for one fixed characteristic `q`, if any.
pub fn cubefree_nonsolvable_at(f: &Graph, q: u64, opts: &CubefreeOptions) -> Result<Option<NonSolvableWitness>> {
    f.check_cap()?;
    Ok(search(&f.complement(), opts, std::iter::once(q)).ok())
}

/// Whether `f` is the prime graph of some PSL(2,q) of cube-free order:
/// three components, each a clique, one of them a single vertex. Returns
/// the smallest matching `q ≤ q_bound`.
pub fn is_psl2_cubefree_prime_graph(f: &Graph, q_bound: u64) -> Option<(u64, PslProfile)> {
    let comps = connected_components(f);
    if comps.len() != 3 || comps.iter().any(|g| g.edge_count() != g.n() * (g.n() - 1) / 2) {
        return None;
    }
    let mut sizes: Vec<usize> = comps.iter().map(Graph::n).collect();
    sizes.sort_unstable();
    if sizes[0] != 1 {
        return None;
    }
    (5..=q_bound).find_map(|q| {
        let p = psl2_cubefree_profile(q)?;
        p.matches(sizes[1], sizes[2]).then_some((q, p))
    })
}

impl NonSolvableWitness {
    /// Checks the claimed decomposition of the complement of `f`.
    pub fn validate(&self, f: &Graph) -> Result<()> {
        let c = f.complement();
        let fail = |m: &str| Err(Error::Precondition(format!("invalid non-solvable witness: {m}")));
        if psl2_cubefree_profile(self.q) != Some(self.profile) || !is_prime(self.q) {
            return fail("q has no cube-free profile");
        }
        let ch = indices_of(&c, std::slice::from_ref(&self.characteristic))?[0];
        let minus = indices_of(&c, &self.minus_side)?;
        let plus = indices_of(&c, &self.plus_side)?;
        let sm = indices_of(&c, &self.s_minus)?;
        let sp = indices_of(&c, &self.s_plus)?;
        let rest = indices_of(&c, &self.bipartite_part)?;
        let mut count = vec![0; c.n()];
        for &v in [ch].iter().chain(&minus).chain(&plus).chain(&sm).chain(&sp).chain(&rest) {
            count[v] += 1;
        }
        if count.iter().any(|&k| k != 1) {
            return fail("parts do not partition the vertices");
        }
        if minus.len() + sm.len() != self.profile.m || plus.len() + sp.len() != self.profile.n {
            return fail("side sizes do not match the profile");
        }
        if sm.len() > odd_simple_primes(self.profile.minus_half())
            || sp.len() > odd_simple_primes(self.profile.plus_half())
        {
            return fail("not enough odd primes of exponent one for the shared set");
        }
        let mut s: Vec<usize> = sm.iter().chain(&sp).copied().collect();
        let mut core: Vec<usize> = minus.iter().chain(&plus).copied().collect();
        if self.characteristic_in_s {
            s.push(ch);
        } else {
            core.push(ch);
        }
        if s.iter().any(|&v| c.degree(v) != 0) {
            return fail("a shared vertex is not isolated in the complement");
        }
        for &u in &core {
            for &v in &core {
                if u >= v {
                    continue;
                }
                let same = (minus.contains(&u) && minus.contains(&v)) || (plus.contains(&u) && plus.contains(&v));
                if c.has_edge(u, v) == same {
                    return fail("core is not complete tripartite on the stated parts");
                }
            }
            if rest.iter().any(|&r| c.has_edge(u, r)) {
                return fail("core touches the bipartite part");
            }
        }
        if is_bipartite(&c.induced_subgraph(&rest)).is_err() {
            return fail("remainder is not bipartite");
        }
        Ok(())
    }
}
