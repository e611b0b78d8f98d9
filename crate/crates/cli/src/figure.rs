//! The table of `(g, n)` pairs behind the root-set scatter plot.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::ControlFlow;

use dehn_roots::enumeration::for_each_dataset;
use dehn_roots::{classify, Tag};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairRow {
    pub genus: u64,
    pub degree: u64,
    pub class_count: u64,
    pub tags: BTreeMap<Tag, u64>,
}

impl PairRow {
    /// Tag multiset sorted by name; a tag occurring `k > 1` times is written
    /// `TAG*k`.
    pub fn tags_field(&self) -> String {
        let mut tags: Vec<(&str, u64)> = self.tags.iter().map(|(t, &k)| (t.as_str(), k)).collect();
        tags.sort_unstable();
        tags.iter()
            .map(|&(name, k)| {
                if k == 1 {
                    name.to_string()
                } else {
                    format!("{name}*{k}")
                }
            })
            .collect::<Vec<_>>()
            .join("+")
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PairTable {
    pub rows: Vec<PairRow>,
}

impl PairTable {
    /// Every pair with `g <= g_max`, `n <= n_max` and at least one root.
    pub fn build(g_max: u64, n_max: u64) -> Self {
        let mut rows = Vec::new();
        for genus in 1..=g_max {
            for degree in (3..=n_max.min(2 * genus + 1)).step_by(2) {
                let mut tags = BTreeMap::new();
                let mut class_count = 0;
                let _ = for_each_dataset::<()>(genus, degree, &mut |ds| {
                    *tags.entry(classify(&ds).tag).or_insert(0) += 1;
                    class_count += 1;
                    ControlFlow::Continue(())
                });
                if class_count > 0 {
                    rows.push(PairRow {
                        genus,
                        degree,
                        class_count,
                        tags,
                    });
                }
            }
        }
        PairTable { rows }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("g,n,classes,tags\n");
        for row in &self.rows {
            writeln!(
                out,
                "{},{},{},{}",
                row.genus,
                row.degree,
                row.class_count,
                row.tags_field()
            )
            .unwrap();
        }
        out
    }
}
