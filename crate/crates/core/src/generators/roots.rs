//! Simply laced root systems in the basis of simple roots.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use super::GenError;

/// Label of a simply laced root system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootLabel {
    A(usize),
    D(usize),
    E(usize),
}

impl RootLabel {
    pub fn rank(self) -> usize {
        match self {
            RootLabel::A(n) | RootLabel::D(n) | RootLabel::E(n) => n,
        }
    }
}

impl fmt::Display for RootLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootLabel::A(n) => write!(f, "A{n}"),
            RootLabel::D(n) => write!(f, "D{n}"),
            RootLabel::E(n) => write!(f, "E{n}"),
        }
    }
}

impl FromStr for RootLabel {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, GenError> {
        let unsupported = || GenError::UnsupportedType(s.to_string());
        let t = s.trim();
        let mut chars = t.chars();
        let letter = chars.next().ok_or_else(unsupported)?.to_ascii_uppercase();
        let n: usize = chars.as_str().trim_start_matches('_').parse().map_err(|_| unsupported())?;
        match (letter, n) {
            ('A', n) if n >= 1 => Ok(RootLabel::A(n)),
            ('D', n) if n >= 4 => Ok(RootLabel::D(n)),
            ('E', 6..=8) => Ok(RootLabel::E(n)),
            _ => Err(unsupported()),
        }
    }
}

/// A root system with roots written in the basis of simple roots, so the
/// simple roots are the unit vectors.
#[derive(Clone, Debug)]
pub struct RootSystem {
    label: RootLabel,
    cartan: Vec<Vec<i64>>,
    roots: Vec<Vec<i64>>,
}

/// Edges of the Dynkin diagram, 0-based. E-types follow Bourbaki labeling.
fn dynkin_edges(label: RootLabel) -> Vec<(usize, usize)> {
    match label {
        RootLabel::A(n) => (0..n - 1).map(|i| (i, i + 1)).collect(),
        RootLabel::D(n) => {
            let mut e: Vec<_> = (0..n - 2).map(|i| (i, i + 1)).collect();
            e.push((n - 3, n - 1));
            e
        }
        RootLabel::E(n) => {
            let mut e = vec![(0, 2), (1, 3)];
            e.extend((2..n - 1).map(|i| (i, i + 1)));
            e
        }
    }
}

impl RootSystem {
    pub fn new(label: RootLabel) -> Result<Self, GenError> {
        let valid = match label {
            RootLabel::A(n) => n >= 1,
            RootLabel::D(n) => n >= 4,
            RootLabel::E(n) => (6..=8).contains(&n),
        };
        if !valid {
            return Err(GenError::UnsupportedType(label.to_string()));
        }
        let n = label.rank();
        let mut cartan = vec![vec![0i64; n]; n];
        for (i, row) in cartan.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (a, b) in dynkin_edges(label) {
            cartan[a][b] = -1;
            cartan[b][a] = -1;
        }

        // Close the simple roots under simple reflections
        // s_i(v) = v - <v, alpha_i^vee> alpha_i.
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 1;
            if seen.insert(e.clone()) {
                queue.push_back(e);
            }
        }
        while let Some(v) = queue.pop_front() {
            for i in 0..n {
                let pairing: i64 = (0..n).map(|j| v[j] * cartan[j][i]).sum();
                if pairing == 0 {
                    continue;
                }
                let mut w = v.clone();
                w[i] -= pairing;
                if seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }
        let mut roots: Vec<Vec<i64>> = seen.into_iter().collect();
        roots.sort_by_key(|r| (r.iter().sum::<i64>() < 0, r.iter().sum::<i64>().abs(), r.clone()));
        Ok(RootSystem { label, cartan, roots })
    }

    pub fn label(&self) -> RootLabel {
        self.label
    }

    pub fn rank(&self) -> usize {
        self.label.rank()
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn simple_roots(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                e
            })
            .collect()
    }

    /// All roots: positive ones by height, then negative ones.
    pub fn all_roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    /// Positive roots ordered by height.
    pub fn positive_roots(&self) -> Vec<Vec<i64>> {
        self.roots.iter().filter(|r| r.iter().all(|&c| c >= 0)).cloned().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(label: &str) -> usize {
        RootSystem::new(label.parse().unwrap()).unwrap().all_roots().len()
    }

    #[test]
    fn closed_form_counts() {
        for n in 1..=6 {
            assert_eq!(count(&format!("A{n}")), n * (n + 1));
        }
        for n in 4..=7 {
            assert_eq!(count(&format!("D{n}")), 2 * n * (n - 1));
        }
        assert_eq!(count("E6"), 72);
        assert_eq!(count("E7"), 126);
        assert_eq!(count("E8"), 240);
    }

    #[test]
    fn closed_under_negation_and_sign_coherent() {
        let rs = RootSystem::new(RootLabel::D(5)).unwrap();
        let all: BTreeSet<_> = rs.all_roots().iter().cloned().collect();
        for r in rs.all_roots() {
            let neg: Vec<i64> = r.iter().map(|c| -c).collect();
            assert!(all.contains(&neg));
            assert!(r.iter().all(|&c| c >= 0) || r.iter().all(|&c| c <= 0));
        }
        assert_eq!(rs.positive_roots().len(), 20);
    }

    #[test]
    fn e8_highest_root() {
        let rs = RootSystem::new(RootLabel::E(8)).unwrap();
        let top = rs.positive_roots().last().unwrap().clone();
        assert_eq!(top, vec![2, 3, 4, 6, 5, 4, 3, 2]);
    }

    #[test]
    fn rejects_unsupported_labels() {
        assert!("B3".parse::<RootLabel>().is_err());
        assert!("D3".parse::<RootLabel>().is_err());
        assert!("E9".parse::<RootLabel>().is_err());
        assert!("A0".parse::<RootLabel>().is_err());
    }
}
