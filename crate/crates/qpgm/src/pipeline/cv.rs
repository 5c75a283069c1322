//! Stratified k-fold splitting.

use crate::error::{Error, Result};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

/// Splits indices into `n_splits` folds preserving class proportions to
/// within one sample per class per fold. Deterministic under `seed`.
pub fn stratified_kfold(labels: &[usize], n_splits: usize, seed: u64) -> Result<Vec<Vec<usize>>> {
    assert!(n_splits >= 2, "need at least 2 folds");
    let n_classes = labels.iter().max().map_or(0, |&l| l + 1);
    let mut per_class: Vec<Vec<usize>> = vec![Vec::new(); n_classes];
    for (i, &label) in labels.iter().enumerate() {
        per_class[label].push(i);
    }
    for (class, members) in per_class.iter().enumerate() {
        if members.len() < n_splits {
            return Err(Error::Stratify {
                class,
                count: members.len(),
                n_splits,
            });
        }
    }

    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut folds: Vec<Vec<usize>> = vec![Vec::new(); n_splits];
    for members in per_class.iter_mut() {
        members.shuffle(&mut rng);
        for (slot, &index) in members.iter().enumerate() {
            folds[slot % n_splits].push(index);
        }
    }
    for fold in folds.iter_mut() {
        fold.sort_unstable();
    }
    Ok(folds)
}

/// Complement of a fold: all indices not in it, in order.
pub fn train_indices(folds: &[Vec<usize>], fold: usize, n: usize) -> Vec<usize> {
    let mut in_fold = vec![false; n];
    for &i in &folds[fold] {
        in_fold[i] = true;
    }
    (0..n).filter(|&i| !in_fold[i]).collect()
}
