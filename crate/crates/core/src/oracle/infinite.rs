use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::algebra::UnionFind;
use crate::error::{Error, Result};

/// Orbit classes of `R_∞` words found inside a bounded letter window.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WindowedClasses {
    /// Class index of each input word, numbered by first occurrence.
    pub class_of: Vec<usize>,
    pub num_classes: usize,
    /// Final margin `M` of the window `[min − M, max + M]`.
    pub margin: i64,
    /// Whether the class count was unchanged over the last two doublings.
    pub stable: bool,
}

fn window_orbit(w: &[i64], lo: i64, hi: i64, budget: u64, visited: &mut u64) -> Result<HashSet<Vec<i64>>> {
    let mut seen = HashSet::from([w.to_vec()]);
    let mut queue = VecDeque::from([w.to_vec()]);
    while let Some(x) = queue.pop_front() {
        for i in 0..x.len().saturating_sub(1) {
            let (a, b) = (x[i], x[i + 1]);
            for (u, v) in [(2 * a - b, a), (b, 2 * b - a)] {
                if u < lo || u > hi || v < lo || v > hi {
                    continue;
                }
                let mut y = x.clone();
                y[i] = u;
                y[i + 1] = v;
                if seen.insert(y.clone()) {
                    *visited += 1;
                    if *visited > budget {
                        return Err(Error::BudgetExceeded(format!("windowed orbit search passed {budget} words")));
                    }
                    queue.push_back(y);
                }
            }
        }
    }
    Ok(seen)
}

fn classes_in_window(words: &[Vec<i64>], lo: i64, hi: i64, budget: u64) -> Result<Vec<usize>> {
    let index: HashMap<&[i64], usize> = words.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
    let mut uf = UnionFind::new(words.len());
    let mut done = vec![false; words.len()];
    let mut visited = 0u64;
    for i in 0..words.len() {
        if done[i] {
            continue;
        }
        for x in window_orbit(&words[i], lo, hi, budget, &mut visited)? {
            if let Some(&j) = index.get(x.as_slice()) {
                uf.union(i, j);
                done[j] = true;
            }
        }
    }
    let mut label = HashMap::new();
    Ok((0..words.len())
        .map(|i| {
            let r = uf.find(i);
            let next = label.len();
            *label.entry(r).or_insert(next)
        })
        .collect())
}

/// Group `R_∞` words into braiding orbits, searching inside windows
/// `[min − M, max + M]` with `M = 2, 4, 8, …` until the number of classes
/// has been the same for three consecutive windows or `max_margin` is passed.
pub fn infinite_orbit_classes(words: &[Vec<i64>], max_margin: i64, budget: u64) -> Result<WindowedClasses> {
    let lo = words.iter().flatten().copied().min().unwrap_or(0);
    let hi = words.iter().flatten().copied().max().unwrap_or(0);
    let mut history: Vec<usize> = Vec::new();
    let mut margin = 2;
    loop {
        let last = classes_in_window(words, lo - margin, hi + margin, budget)?;
        let count = last.iter().copied().max().map_or(0, |m| m + 1);
        history.push(count);
        let n = history.len();
        let stable = n >= 3 && history[n - 1] == history[n - 2] && history[n - 2] == history[n - 3];
        if stable || margin * 2 > max_margin {
            return Ok(WindowedClasses { class_of: last, num_classes: count, margin, stable });
        }
        margin *= 2;
    }
}

/// Whether two `R_∞` words are orbit-equal, decided within growing windows.
/// `None` when the windows never stabilised.
pub fn infinite_orbit_equal(v: &[i64], w: &[i64], max_margin: i64, budget: u64) -> Result<Option<bool>> {
    if v.len() != w.len() {
        return Ok(Some(false));
    }
    let c = infinite_orbit_classes(&[v.to_vec(), w.to_vec()], max_margin, budget)?;
    let same = c.class_of[0] == c.class_of[1];
    Ok(if same || c.stable { Some(same) } else { None })
}
