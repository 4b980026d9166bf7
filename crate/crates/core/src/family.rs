//! Named tree families, recognition by canonical code, and count dispatch
//! across the enumeration, brute-force and formula routes.

use std::fmt;

use crate::enumeration::Enumerator;
use crate::error::{invalid, Result};
use crate::formulas::{self, BigCount};
use crate::induction::BruteForce;
use crate::tree::{self, require_topological, RootedTree};

/// Hosts up to this many leaves are also enumerated when `Auto` can use a formula.
pub const AUTO_CROSS_CHECK_LEAVES: u64 = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Star { n: u64 },
    BinaryCaterpillar { n: u64 },
    Caterpillar { d: u64, n: u64 },
    Complete { d: u32, h: u32 },
}

impl Family {
    pub fn build(&self) -> Result<RootedTree> {
        match *self {
            Family::Star { n } => tree::star(to_usize(n)?),
            Family::BinaryCaterpillar { n } => tree::binary_caterpillar(to_usize(n)?),
            Family::Caterpillar { d, n } => tree::dary_caterpillar(to_usize(d)?, to_usize(n)?),
            Family::Complete { d, h } => {
                let leaves = self
                    .leaf_count()
                    .ok_or_else(|| invalid("complete tree has too many leaves to build"))?;
                if leaves > 1 << 24 {
                    return Err(invalid(format!(
                        "refusing to build a tree with {leaves} leaves"
                    )));
                }
                tree::complete_dary(d as usize, h as usize)
            }
        }
    }

    pub fn formula_count(&self) -> Result<BigCount> {
        match *self {
            Family::Star { n } => formulas::star_count(n),
            Family::BinaryCaterpillar { n } => formulas::binary_caterpillar_count(n),
            Family::Caterpillar { d: 2, n } => formulas::binary_caterpillar_count(n),
            Family::Caterpillar { d, n } => formulas::caterpillar_count(d, n),
            Family::Complete { d, h } => formulas::complete_dary_count(d, h),
        }
    }

    /// Leaf count, or `None` when it does not fit in a `u64`.
    pub fn leaf_count(&self) -> Option<u64> {
        match *self {
            Family::Star { n }
            | Family::BinaryCaterpillar { n }
            | Family::Caterpillar { n, .. } => Some(n),
            Family::Complete { d, h } => u64::from(d).checked_pow(h),
        }
    }

    /// Identifies `t` as a member of a named family up to isomorphism.
    ///
    /// Where families overlap the first match in the order star, binary
    /// caterpillar, complete tree, `d`-ary caterpillar wins.
    pub fn recognize(t: &RootedTree) -> Option<Family> {
        if !t.is_topological() {
            return None;
        }
        let n = t.leaf_count();
        if t.children().iter().all(RootedTree::is_leaf) {
            return Some(Family::Star { n: n as u64 });
        }
        let code = t.canonical_code();
        let d = t.outdegree();
        if d == 2 && tree::binary_caterpillar(n).ok()?.canonical_code() == code {
            return Some(Family::BinaryCaterpillar { n: n as u64 });
        }
        let h = t.height();
        if (d as u64).checked_pow(h as u32) == Some(n as u64)
            && tree::complete_dary(d, h).ok()?.canonical_code() == code
        {
            return Some(Family::Complete {
                d: d as u32,
                h: h as u32,
            });
        }
        if d >= 3 {
            if let Ok(cat) = tree::dary_caterpillar(d, n) {
                if cat.canonical_code() == code {
                    return Some(Family::Caterpillar {
                        d: d as u64,
                        n: n as u64,
                    });
                }
            }
        }
        None
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Star { n } => write!(f, "S_{n}"),
            Family::BinaryCaterpillar { n } => write!(f, "F^2_{n}"),
            Family::Caterpillar { d, n } => write!(f, "F^{d}_{n}"),
            Family::Complete { d, h } => write!(f, "C^{d}_{h}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Auto,
    Enumerate,
    Brute,
    Formula,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Auto => "auto",
            Method::Enumerate => "enumerate",
            Method::Brute => "brute",
            Method::Formula => "formula",
        }
    }
}

/// Result of counting one host, with every route that ran.
#[derive(Debug, Clone)]
pub struct CountOutcome {
    pub family: Option<Family>,
    pub leaf_count: Option<u64>,
    pub routes: Vec<(Method, BigCount)>,
}

impl CountOutcome {
    /// The first route's value.
    pub fn value(&self) -> &BigCount {
        &self.routes[0].1
    }

    /// True when every route produced the same value.
    pub fn agree(&self) -> bool {
        self.routes.iter().all(|(_, v)| v == self.value())
    }
}

/// Counts a family member, building the tree only when a tree-based route runs.
pub fn count_family(family: Family, method: Method) -> Result<CountOutcome> {
    let leaf_count = family.leaf_count();
    let mut routes = Vec::new();
    match method {
        Method::Formula => routes.push((Method::Formula, family.formula_count()?)),
        Method::Enumerate => routes.push((
            Method::Enumerate,
            Enumerator::default().count(&family.build()?)?,
        )),
        Method::Brute => routes.push((
            Method::Brute,
            BruteForce::default().run(&family.build()?)?.set.count(),
        )),
        Method::Auto => {
            routes.push((Method::Formula, family.formula_count()?));
            if leaf_count.is_some_and(|n| n <= AUTO_CROSS_CHECK_LEAVES) {
                routes.push((
                    Method::Enumerate,
                    Enumerator::default().count(&family.build()?)?,
                ));
            }
        }
    }
    Ok(CountOutcome {
        family: Some(family),
        leaf_count,
        routes,
    })
}

/// Counts an arbitrary topological tree by the requested route.
///
/// `Auto` uses the formula when the tree is a recognized family member,
/// cross-checked by enumeration on small hosts, and enumeration otherwise.
/// `Formula` fails for trees outside the named families.
pub fn count_tree(t: &RootedTree, method: Method) -> Result<CountOutcome> {
    require_topological(t)?;
    let family = Family::recognize(t);
    let leaf_count = Some(t.leaf_count() as u64);
    let mut routes = Vec::new();
    match method {
        Method::Enumerate => routes.push((Method::Enumerate, Enumerator::default().count(t)?)),
        Method::Brute => routes.push((Method::Brute, BruteForce::default().run(t)?.set.count())),
        Method::Formula => {
            let f =
                family.ok_or_else(|| invalid("tree is not a member of a family with a formula"))?;
            routes.push((Method::Formula, f.formula_count()?));
        }
        Method::Auto => match family {
            Some(f) => {
                routes.push((Method::Formula, f.formula_count()?));
                if t.leaf_count() as u64 <= AUTO_CROSS_CHECK_LEAVES {
                    routes.push((Method::Enumerate, Enumerator::default().count(t)?));
                }
            }
            None => routes.push((Method::Enumerate, Enumerator::default().count(t)?)),
        },
    }
    Ok(CountOutcome {
        family,
        leaf_count,
        routes,
    })
}

fn to_usize(v: u64) -> Result<usize> {
    usize::try_from(v).map_err(|_| invalid(format!("{v} is too large")))
}
