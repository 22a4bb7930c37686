#![allow(dead_code)]

use cyflat_core::{Matroid, SubsetMask};

/// Label of the base element an expanded label descends from (`"3#1"`, `"3_1#1"` -> `"3"`).
pub fn base_label(label: &str) -> &str {
    label.split(['#', '_']).next().unwrap_or(label)
}

/// Relabels `d` onto `m`: elements of `d` descending from the clonal class `C` of `m`
/// are matched, in ground order, with the elements of `C`. Returns the relabelled
/// matroid when the counts line up.
pub fn relabel_by_classes(d: &Matroid, m: &Matroid) -> Option<Matroid> {
    let mut labels: Vec<Option<String>> = vec![None; d.len()];
    for class in m.clonal_classes() {
        let names = m.labels_of(class);
        let from: Vec<usize> = (0..d.len())
            .filter(|&i| names.iter().any(|n| n == base_label(d.ground().label(i))))
            .collect();
        if from.len() != names.len() {
            return None;
        }
        for (i, name) in from.into_iter().zip(names) {
            labels[i] = Some(name);
        }
    }
    let labels: Option<Vec<String>> = labels.into_iter().collect();
    d.with_labels(labels?).ok()
}

pub fn isomorphic_by_classes(d: &Matroid, m: &Matroid) -> bool {
    relabel_by_classes(d, m).is_some_and(|r| r.equals(m))
}

pub fn all_subsets(m: &Matroid) -> impl Iterator<Item = SubsetMask> {
    (0..1u64 << m.len()).map(SubsetMask)
}
