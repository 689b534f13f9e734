/// A sorted set of element indices of some parent table.
///
/// Used for subgroups, ideals and plain element sets alike; which closure
/// properties hold is checked by the operations that need them.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubSet {
    members: Vec<usize>,
}

impl SubSet {
    pub fn from_sorted(members: Vec<usize>) -> SubSet {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        SubSet { members }
    }

    pub fn from_unsorted(mut members: Vec<usize>) -> SubSet {
        members.sort_unstable();
        members.dedup();
        SubSet { members }
    }

    pub(crate) fn from_seen(seen: &[bool]) -> SubSet {
        SubSet {
            members: seen
                .iter()
                .enumerate()
                .filter(|(_, &s)| s)
                .map(|(i, _)| i)
                .collect(),
        }
    }

    pub fn trivial() -> SubSet {
        SubSet { members: vec![0] }
    }

    pub fn full(n: usize) -> SubSet {
        SubSet { members: (0..n).collect() }
    }

    #[inline]
    pub fn contains(&self, e: usize) -> bool {
        self.members.binary_search(&e).is_ok()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.members == [0]
    }

    pub fn intersect(&self, other: &SubSet) -> SubSet {
        SubSet {
            members: self
                .members
                .iter()
                .copied()
                .filter(|&e| other.contains(e))
                .collect(),
        }
    }

    pub fn union(&self, other: &SubSet) -> SubSet {
        let mut v = self.members.clone();
        v.extend_from_slice(&other.members);
        SubSet::from_unsorted(v)
    }

    pub fn is_subset_of(&self, other: &SubSet) -> bool {
        self.members.iter().all(|&e| other.contains(e))
    }
}

impl std::fmt::Display for SubSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (k, m) in self.members.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "}}")
    }
}
