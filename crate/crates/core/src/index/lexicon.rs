use std::collections::HashMap;
use std::fmt;

/// Dense term identifier. `0` is reserved for tokens outside the vocabulary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct TermId(pub u32);

impl TermId {
    pub const OOV: TermId = TermId(0);

    pub fn is_oov(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for TermId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Bidirectional token/term-id map with corpus and document frequencies.
///
/// Slot 0 of every table is the reserved out-of-vocabulary entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lexicon {
    tokens: Vec<String>,
    ids: HashMap<String, TermId>,
    cf: Vec<u64>,
    df: Vec<u64>,
}

impl Default for Lexicon {
    fn default() -> Self {
        Self { tokens: vec![String::new()], ids: HashMap::new(), cf: vec![0], df: vec![0] }
    }
}

impl Lexicon {
    /// Number of terms, `V`.
    pub fn len(&self) -> usize {
        self.tokens.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn token(&self, id: TermId) -> Option<&str> {
        if id.is_oov() {
            return None;
        }
        self.tokens.get(id.0 as usize).map(String::as_str)
    }

    /// Looks up a token, returning [`TermId::OOV`] when it is unknown.
    pub fn id(&self, token: &str) -> TermId {
        self.get(token).unwrap_or(TermId::OOV)
    }

    pub fn get(&self, token: &str) -> Option<TermId> {
        self.ids.get(token).copied()
    }

    pub fn contains(&self, id: TermId) -> bool {
        !id.is_oov() && (id.0 as usize) < self.tokens.len()
    }

    /// Corpus frequency; zero for ids outside the vocabulary.
    pub fn cf(&self, id: TermId) -> u64 {
        self.cf.get(id.0 as usize).copied().unwrap_or(0)
    }

    /// Document frequency; zero for ids outside the vocabulary.
    pub fn df(&self, id: TermId) -> u64 {
        self.df.get(id.0 as usize).copied().unwrap_or(0)
    }

    /// `(id, token, cf, df)` in id order.
    pub fn iter(&self) -> impl Iterator<Item = (TermId, &str, u64, u64)> + '_ {
        (1..self.tokens.len())
            .map(move |i| (TermId(i as u32), self.tokens[i].as_str(), self.cf[i], self.df[i]))
    }

    pub(crate) fn intern(&mut self, token: &str) -> TermId {
        if let Some(&id) = self.ids.get(token) {
            return id;
        }
        let id = TermId(self.tokens.len() as u32);
        self.tokens.push(token.to_string());
        self.ids.insert(token.to_string(), id);
        self.cf.push(0);
        self.df.push(0);
        id
    }

    pub(crate) fn record(&mut self, id: TermId, cf: u64, df: u64) {
        self.cf[id.0 as usize] = cf;
        self.df[id.0 as usize] = df;
    }

    /// Appends an entry read back from disk. Ids must arrive as 1, 2, ...
    pub(crate) fn push_entry(&mut self, token: String, cf: u64, df: u64) -> Result<TermId, String> {
        if self.ids.contains_key(&token) {
            return Err(format!("duplicate token `{token}`"));
        }
        let id = TermId(self.tokens.len() as u32);
        self.ids.insert(token.clone(), id);
        self.tokens.push(token);
        self.cf.push(cf);
        self.df.push(df);
        Ok(id)
    }
}

impl std::ops::Index<TermId> for Lexicon {
    type Output = str;

    /// Panics on [`TermId::OOV`] or an id past the vocabulary.
    fn index(&self, id: TermId) -> &str {
        self.token(id).unwrap_or_else(|| panic!("term id {id} is not in the lexicon"))
    }
}
