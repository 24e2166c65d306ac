use std::collections::BTreeSet;

/// The bundled English list (Onix toolkit, list 1), one entry per line.
pub const DEFAULT_STOPWORDS: &str = include_str!("../../data/stopwords-onix.txt");

/// Lowercase stopwords, no whitespace inside entries.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StopwordSet {
    words: BTreeSet<String>,
}

impl StopwordSet {
    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.words.iter().map(String::as_str)
    }

    pub fn bundled() -> Self {
        load_stopwords(DEFAULT_STOPWORDS)
    }
}

/// One token per line; blank lines and `#` comments are skipped. Lines with
/// several whitespace-separated tokens contribute each token.
pub fn load_stopwords(text: &str) -> StopwordSet {
    let words = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(str::split_whitespace)
        .map(str::to_lowercase)
        .collect();
    StopwordSet { words }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_and_casefold() {
        assert!(load_stopwords("").is_empty());
        let set = load_stopwords("The\nand\nAND\n");
        assert_eq!(set.iter().collect::<Vec<_>>(), vec!["and", "the"]);
    }

    #[test]
    fn comments_and_blanks() {
        let set = load_stopwords("# header\n\nof  # trailing comment\n");
        assert_eq!(set.len(), 1);
        assert!(set.contains("of"));
    }

    #[test]
    fn bundled_list_has_429_entries() {
        let entries = DEFAULT_STOPWORDS
            .lines()
            .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
            .count();
        assert_eq!(entries, 429);
        // The source list repeats down, high (x3), new, right and still.
        let set = StopwordSet::bundled();
        assert_eq!(set.len(), 423);
        for w in ["for", "to", "the", "of", "and", "a"] {
            assert!(set.contains(w), "{w}");
        }
        for w in ["citation", "science", "indexes", "dna"] {
            assert!(!set.contains(w), "{w}");
        }
    }
}
