//! Solvable groups of nth-power-free order.
//!
//! The complement must be triangle-free. With `m` the number of primes below
//! `n`, search for a red class `R` of size `k ≤ m`, independent in the
//! complement, whose removal leaves a bipartite graph; color the remainder
//! Green/Blue and label `R` with the first `k` primes. The coloring works
//! when every Blue vertex `b` satisfies `∏ label(R(b)) ≤ n − 1`, where `R(b)`
//! are the starts of directed 2-paths ending at `b` in the canonical
//! orientation. Checking the full product suffices: among subsets of
//! `R(b)`, the whole set has the largest product.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{indices_of, labels_of, Verdict};
use crate::error::{Error, Result};
use crate::graphcore::{
    canonical_orientation, components_active, directed_two_path_sources, is_triangle_free, two_color_active,
    Coloring, Graph,
};
use crate::numtheory::{first_primes, primes_below};

const RED: usize = 0;
const GREEN: usize = 1;
const BLUE: usize = 2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlueCheck {
    pub vertex: String,
    pub sources: Vec<String>,
    pub product: u128,
}

/// An accepting coloring: classes Red/Green/Blue are colors 0/1/2 of
/// `coloring`, indexed like the vertices of `F`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NpfWitness {
    pub n: u64,
    pub coloring: Coloring,
    pub red: Vec<String>,
    pub red_labels: Vec<u64>,
    pub blue: Vec<BlueCheck>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermFailure {
    pub labels: Vec<u64>,
    pub blue_vertex: String,
    pub sources: Vec<String>,
    pub product: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringAttempt {
    pub green: Vec<String>,
    pub blue: Vec<String>,
    /// First violating Blue vertex for each label permutation tried.
    pub failures: Vec<PermFailure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CaseOutcome {
    /// The complement minus the red set still has this odd cycle.
    OddCycle { cycle: Vec<String> },
    /// Bipartite remainder, but every Green/Blue choice and labeling fails.
    Exhausted { attempts: Vec<ColoringAttempt> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NpfCase {
    pub red: Vec<String>,
    pub outcome: CaseOutcome,
}

/// Exhaustive rejection report, one case per candidate red set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NpfReport {
    pub n: u64,
    pub triangle: Option<[String; 3]>,
    pub cases: Vec<NpfCase>,
}

impl NpfReport {
    pub fn case(&self, red: &[&str]) -> Option<&NpfCase> {
        self.cases.iter().find(|c| c.red.iter().map(String::as_str).eq(red.iter().copied()))
    }

    /// One line per case: `[a,b]: (c,d)` lists the violating Blue vertex of
    /// each coloring; `[a]: (uvwxy)` gives the surviving odd cycle. Labels
    /// are separated by `-` inside cycles when some label is longer than one
    /// character.
    pub fn case_table(&self) -> Vec<String> {
        let all: Vec<&String> = self
            .cases
            .iter()
            .flat_map(|c| match &c.outcome {
                CaseOutcome::OddCycle { cycle } => cycle.iter().collect::<Vec<_>>(),
                CaseOutcome::Exhausted { .. } => vec![],
            })
            .collect();
        let sep = if all.iter().any(|l| l.chars().count() > 1) { "-" } else { "" };
        self.cases
            .iter()
            .map(|c| {
                let body = match &c.outcome {
                    CaseOutcome::OddCycle { cycle } => cycle.join(sep),
                    CaseOutcome::Exhausted { attempts } => attempts
                        .iter()
                        .map(|a| {
                            let mut vs: Vec<&str> = Vec::new();
                            for f in &a.failures {
                                if !vs.contains(&f.blue_vertex.as_str()) {
                                    vs.push(&f.blue_vertex);
                                }
                            }
                            vs.join("/")
                        })
                        .collect::<Vec<_>>()
                        .join(","),
                };
                format!("[{}]: ({})", c.red.join(","), body)
            })
            .collect()
    }
}

/// Per blue vertex, the red positions (indices into the red list) that
/// start a directed 2-path ending there.
fn blue_sources(c: &Graph, coloring: &Coloring, red: &[usize]) -> Result<Vec<(usize, Vec<usize>)>> {
    let d = canonical_orientation(c, coloring)?;
    let mut out = Vec::new();
    for b in (0..c.n()).filter(|&v| coloring.colors[v] == BLUE) {
        let srcs = directed_two_path_sources(&d, b);
        let pos = red.iter().enumerate().filter(|(_, r)| srcs.contains(r)).map(|(i, _)| i).collect();
        out.push((b, pos));
    }
    Ok(out)
}

fn product(labels: &[u64], pos: &[usize]) -> u128 {
    pos.iter().fold(1u128, |acc, &i| acc.saturating_mul(labels[i] as u128))
}

fn next_permutation(v: &mut [u64]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// k-subsets of `0..n` in lexicographic order.
fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if k > n {
        return false;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if f(&idx) {
            return true;
        }
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return false;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

pub fn is_npowerfree_solvable_realizable(f: &Graph, n: u64) -> Result<Verdict<NpfWitness, NpfReport>> {
    if n < 2 {
        return Err(Error::Precondition(format!("n must be at least 2, got {n}")));
    }
    f.check_cap()?;
    let c = f.complement();
    let mut report = NpfReport { n, triangle: None, cases: Vec::new() };
    if let Some(t) = is_triangle_free(&c) {
        report.triangle = Some(t.map(|v| c.label(v).to_string()));
        return Ok(Verdict::Reject { obstruction: report });
    }
    let m = primes_below(n).len();
    let bound = (n - 1) as u128;
    let nv = c.n();
    let mut found: Option<NpfWitness> = None;
    let mut error: Option<Error> = None;

    for k in 0..=m.min(nv) {
        let primes = first_primes(k);
        let done = for_each_subset(nv, k, |red| {
            if red.iter().enumerate().any(|(i, &a)| red[i + 1..].iter().any(|&b| c.has_edge(a, b))) {
                return false;
            }
            let mut active = vec![true; nv];
            for &r in red {
                active[r] = false;
            }
            let base = match two_color_active(&c, &active) {
                Ok(b) => b,
                Err(cycle) => {
                    report.cases.push(NpfCase {
                        red: labels_of(&c, red.iter().copied()),
                        outcome: CaseOutcome::OddCycle { cycle: labels_of(&c, cycle) },
                    });
                    return false;
                }
            };
            // Isolated remainder vertices never lie on a 2-path, so only
            // components with an edge are worth swapping.
            let flippable: Vec<Vec<usize>> =
                components_active(&c, &active).into_iter().filter(|comp| comp.len() > 1).collect();
            let mut attempts = Vec::new();
            for mask in 0u64..1 << flippable.len() {
                let mut colors = vec![RED; nv];
                for v in (0..nv).filter(|&v| active[v]) {
                    colors[v] = if base[v] == Some(0) { GREEN } else { BLUE };
                }
                for (i, comp) in flippable.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        for &v in comp {
                            colors[v] = GREEN + BLUE - colors[v];
                        }
                    }
                }
                let coloring = Coloring::new(3, colors);
                let srcs = match blue_sources(&c, &coloring, red) {
                    Ok(s) => s,
                    Err(e) => {
                        error = Some(e);
                        return true;
                    }
                };
                let mut labels = primes.clone();
                let mut failures = Vec::new();
                loop {
                    let bad = srcs.iter().find(|(_, pos)| product(&labels, pos) > bound);
                    match bad {
                        None => {
                            found = Some(NpfWitness {
                                n,
                                red: labels_of(&c, red.iter().copied()),
                                red_labels: labels.clone(),
                                blue: srcs
                                    .iter()
                                    .map(|(b, pos)| BlueCheck {
                                        vertex: c.label(*b).to_string(),
                                        sources: labels_of(&c, pos.iter().map(|&i| red[i])),
                                        product: product(&labels, pos),
                                    })
                                    .collect(),
                                coloring,
                            });
                            return true;
                        }
                        Some((b, pos)) => failures.push(PermFailure {
                            labels: labels.clone(),
                            blue_vertex: c.label(*b).to_string(),
                            sources: labels_of(&c, pos.iter().map(|&i| red[i])),
                            product: product(&labels, pos),
                        }),
                    }
                    if !next_permutation(&mut labels) {
                        break;
                    }
                }
                let cls = coloring.classes();
                attempts.push(ColoringAttempt {
                    green: labels_of(&c, cls[GREEN].iter().copied()),
                    blue: labels_of(&c, cls[BLUE].iter().copied()),
                    failures,
                });
            }
            report.cases.push(NpfCase {
                red: labels_of(&c, red.iter().copied()),
                outcome: CaseOutcome::Exhausted { attempts },
            });
            false
        });
        if let Some(e) = error {
            return Err(e);
        }
        if done {
            break;
        }
    }
    Ok(match found {
        Some(w) => Verdict::Accept { witness: w },
        None => Verdict::Reject { obstruction: report },
    })
}

impl NpfWitness {
    /// Recomputes every claim of the witness against the prime graph `f`.
    pub fn validate(&self, f: &Graph) -> Result<()> {
        let c = f.complement();
        let fail = |m: String| Err(Error::Precondition(format!("invalid witness: {m}")));
        if self.coloring.k != 3 || !self.coloring.is_proper(&c) {
            return fail("coloring is not a proper 3-coloring of the complement".into());
        }
        let red = indices_of(&c, &self.red)?;
        let cls = self.coloring.classes();
        if red != cls[RED] {
            return fail("red list differs from the red class".into());
        }
        let mut sorted = self.red_labels.clone();
        sorted.sort_unstable();
        if sorted != first_primes(red.len()) {
            return fail("red labels are not the first k primes".into());
        }
        if self.red_labels.iter().any(|&p| p >= self.n) {
            return fail("a red label is not below n".into());
        }
        let srcs = blue_sources(&c, &self.coloring, &red)?;
        if srcs.len() != self.blue.len() {
            return fail("blue list has the wrong length".into());
        }
        for ((b, pos), claim) in srcs.iter().zip(&self.blue) {
            let p = product(&self.red_labels, pos);
            let sources: BTreeSet<String> = labels_of(&c, pos.iter().map(|&i| red[i])).into_iter().collect();
            if c.label(*b) != claim.vertex
                || sources != claim.sources.iter().cloned().collect()
                || p != claim.product
            {
                return fail(format!("blue vertex {} recomputes differently", c.label(*b)));
            }
            if p > (self.n - 1) as u128 {
                return fail(format!("blue vertex {} has product {p} >= n", claim.vertex));
            }
        }
        Ok(())
    }

    /// Label of each red vertex, by label string.
    pub fn red_label_of(&self, v: &str) -> Option<u64> {
        self.red.iter().position(|r| r == v).map(|i| self.red_labels[i])
    }
}
