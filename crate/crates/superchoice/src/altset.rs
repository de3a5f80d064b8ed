//! Alternatives, label tables and alternative sets.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// Position of an alternative in its label table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AltId(pub u32);

impl AltId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A set of alternatives, indexed by label-table position.
///
/// Equality ignores capacity, so sets built against tables of different
/// sizes compare by membership only.
#[derive(Clone, Default)]
pub struct AltSet {
    bits: FixedBitSet,
}

impl AltSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn with_capacity(cap: usize) -> Self {
        AltSet {
            bits: FixedBitSet::with_capacity(cap),
        }
    }

    pub fn from_ids(ids: impl IntoIterator<Item = AltId>) -> Self {
        let mut s = AltSet::empty();
        for id in ids {
            s.insert(id);
        }
        s
    }

    pub fn insert(&mut self, id: AltId) {
        let i = id.index();
        if i >= self.bits.len() {
            self.bits.grow(i + 1);
        }
        self.bits.insert(i);
    }

    pub fn remove(&mut self, id: AltId) {
        if id.index() < self.bits.len() {
            self.bits.set(id.index(), false);
        }
    }

    pub fn contains(&self, id: AltId) -> bool {
        self.bits.contains(id.index())
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    /// Members in ascending table order.
    pub fn iter(&self) -> impl Iterator<Item = AltId> + '_ {
        self.bits.ones().map(|i| AltId(i as u32))
    }

    pub fn is_subset(&self, other: &AltSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn intersection(&self, other: &AltSet) -> AltSet {
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        AltSet { bits }
    }

    pub fn union(&self, other: &AltSet) -> AltSet {
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        AltSet { bits }
    }

    pub fn difference(&self, other: &AltSet) -> AltSet {
        let mut bits = self.bits.clone();
        bits.difference_with(&other.bits);
        AltSet { bits }
    }

    pub fn without(&self, id: AltId) -> AltSet {
        let mut s = self.clone();
        s.remove(id);
        s
    }
}

impl PartialEq for AltSet {
    fn eq(&self, other: &Self) -> bool {
        self.bits.ones().eq(other.bits.ones())
    }
}

impl Eq for AltSet {}

impl Hash for AltSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        for i in self.bits.ones() {
            i.hash(state);
        }
    }
}

impl fmt::Debug for AltSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.bits.ones()).finish()
    }
}

impl FromIterator<AltId> for AltSet {
    fn from_iter<I: IntoIterator<Item = AltId>>(iter: I) -> Self {
        AltSet::from_ids(iter)
    }
}

/// An ordered universe of alternatives drawn from a shared label table.
///
/// Labels in the table are sorted, so table order is lexicographic label
/// order. Contractions keep the table and shrink the member list, which lets
/// sets computed on a contraction be compared directly with sets on the
/// original universe.
#[derive(Clone, PartialEq, Eq)]
pub struct Universe {
    labels: Arc<[String]>,
    alts: Vec<AltId>,
}

impl Universe {
    pub fn new<S: AsRef<str>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let mut v: Vec<String> = Vec::new();
        for l in labels {
            let l = l.as_ref();
            if l.is_empty() || l.chars().any(char::is_whitespace) {
                return Err(Error::Config(format!("invalid label `{l}`")));
            }
            v.push(l.to_string());
        }
        if v.is_empty() {
            return Err(Error::EmptyProfile);
        }
        v.sort();
        for w in v.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateLabel(w[0].clone()));
            }
        }
        let alts = (0..v.len() as u32).map(AltId).collect();
        Ok(Universe {
            labels: v.into(),
            alts,
        })
    }

    /// Labels `a`, `b`, ... for up to 26 alternatives, zero-padded `x0001`
    /// style beyond that so lexicographic and numeric order agree.
    pub fn generated(m: usize) -> Self {
        assert!(m >= 1, "universe needs at least one alternative");
        let labels: Vec<String> = if m <= 26 {
            (0..m)
                .map(|i| ((b'a' + i as u8) as char).to_string())
                .collect()
        } else {
            let width = (m - 1).to_string().len();
            (0..m).map(|i| format!("x{i:0width$}")).collect()
        };
        Universe::new(labels).expect("generated labels are valid")
    }

    pub fn len(&self) -> usize {
        self.alts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alts.is_empty()
    }

    pub fn table_len(&self) -> usize {
        self.labels.len()
    }

    pub fn alts(&self) -> &[AltId] {
        &self.alts
    }

    /// Alternative at local position `i`.
    pub fn alt(&self, i: usize) -> AltId {
        self.alts[i]
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[self.alts[i].index()]
    }

    pub fn label_of(&self, id: AltId) -> &str {
        &self.labels[id.index()]
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> + '_ {
        self.alts.iter().map(|a| self.labels[a.index()].as_str())
    }

    /// Local position of `id`, if it is a member.
    pub fn index_of(&self, id: AltId) -> Option<usize> {
        self.alts.binary_search(&id).ok()
    }

    /// Member with the given label.
    pub fn find(&self, label: &str) -> Option<AltId> {
        let pos = self
            .labels
            .binary_search_by(|l| l.as_str().cmp(label))
            .ok()?;
        let id = AltId(pos as u32);
        self.index_of(id).map(|_| id)
    }

    pub fn local(&self, label: &str) -> Result<usize> {
        self.find(label)
            .and_then(|id| self.index_of(id))
            .ok_or_else(|| Error::UnknownAlternative(label.to_string()))
    }

    pub fn all(&self) -> AltSet {
        let mut s = AltSet::with_capacity(self.table_len());
        for &a in &self.alts {
            s.insert(a);
        }
        s
    }

    pub fn same_table(&self, other: &Universe) -> bool {
        Arc::ptr_eq(&self.labels, &other.labels) || self.labels == other.labels
    }

    pub fn from_locals(&self, locals: impl IntoIterator<Item = usize>) -> AltSet {
        let mut s = AltSet::with_capacity(self.table_len());
        for i in locals {
            s.insert(self.alts[i]);
        }
        s
    }

    pub fn from_bits(&self, bits: &FixedBitSet) -> AltSet {
        self.from_locals(bits.ones())
    }

    /// Local positions of the members of `set` that belong to this universe.
    pub fn locals(&self, set: &AltSet) -> Vec<usize> {
        set.iter().filter_map(|id| self.index_of(id)).collect()
    }

    /// Sub-universe on `set`, plus the map old local → new local.
    pub fn restrict(&self, set: &AltSet) -> Result<(Universe, Vec<Option<usize>>)> {
        let mut remap = vec![None; self.len()];
        let mut alts = Vec::new();
        for id in set.iter() {
            let i = self
                .index_of(id)
                .ok_or_else(|| Error::UnknownAlternative(self.labels[id.index()].clone()))?;
            remap[i] = Some(alts.len());
            alts.push(id);
        }
        if alts.is_empty() {
            return Err(Error::EmptySubset);
        }
        Ok((
            Universe {
                labels: self.labels.clone(),
                alts,
            },
            remap,
        ))
    }

    /// `{a, b}` with members in label order; `{}` when empty.
    pub fn format_set(&self, set: &AltSet) -> String {
        let mut out = String::from("{");
        for (k, id) in set.iter().enumerate() {
            if k > 0 {
                out.push_str(", ");
            }
            out.push_str(self.label_of(id));
        }
        out.push('}');
        out
    }

    /// Accepts `a,b,c`, `a b c`, `{a, b}` and `{}`.
    pub fn parse_set(&self, text: &str) -> Result<AltSet> {
        let inner = text.trim().trim_start_matches('{').trim_end_matches('}');
        let mut s = AltSet::with_capacity(self.table_len());
        for tok in inner.split(|c: char| c == ',' || c.is_whitespace()) {
            if tok.is_empty() {
                continue;
            }
            s.insert(
                self.find(tok)
                    .ok_or_else(|| Error::UnknownAlternative(tok.to_string()))?,
            );
        }
        Ok(s)
    }
}

impl fmt::Debug for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.labels()).finish()
    }
}
