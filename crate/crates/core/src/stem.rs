//! Snowball Russian stemmer.
//!
//! A direct implementation of the published Snowball algorithm for Russian:
//! the word is split into the RV and R2 regions, then suffix classes are
//! removed right to left. Every suffix search picks the longest candidate that
//! lies wholly inside RV; if the action attached to that candidate fails, the
//! step fails (there is no fallback to a shorter suffix).

const VOWELS: [char; 9] = ['а', 'е', 'и', 'о', 'у', 'ы', 'э', 'ю', 'я'];

/// Suffix tables. The tag says what the match requires:
/// `1` means the suffix must follow `а` or `я` (which stays), `2` deletes
/// unconditionally.
const PERFECTIVE_GERUND: &[(&str, u8)] = &[
    ("в", 1),
    ("вши", 1),
    ("вшись", 1),
    ("ив", 2),
    ("ивши", 2),
    ("ившись", 2),
    ("ыв", 2),
    ("ывши", 2),
    ("ывшись", 2),
];

const ADJECTIVE: &[&str] = &[
    "ее", "ие", "ые", "ое", "ими", "ыми", "ей", "ий", "ый", "ой", "ем", "им", "ым", "ом", "его",
    "ого", "ему", "ому", "их", "ых", "ую", "юю", "ая", "яя", "ою", "ею",
];

const PARTICIPLE: &[(&str, u8)] = &[
    ("ем", 1),
    ("нн", 1),
    ("вш", 1),
    ("ющ", 1),
    ("щ", 1),
    ("ивш", 2),
    ("ывш", 2),
    ("ующ", 2),
];

const REFLEXIVE: &[&str] = &["ся", "сь"];

const VERB: &[(&str, u8)] = &[
    ("ла", 1),
    ("на", 1),
    ("ете", 1),
    ("йте", 1),
    ("ли", 1),
    ("й", 1),
    ("л", 1),
    ("ем", 1),
    ("н", 1),
    ("ло", 1),
    ("но", 1),
    ("ет", 1),
    ("ют", 1),
    ("ны", 1),
    ("ть", 1),
    ("ешь", 1),
    ("нно", 1),
    ("ила", 2),
    ("ыла", 2),
    ("ена", 2),
    ("ейте", 2),
    ("уйте", 2),
    ("ите", 2),
    ("или", 2),
    ("ыли", 2),
    ("ей", 2),
    ("уй", 2),
    ("ил", 2),
    ("ыл", 2),
    ("им", 2),
    ("ым", 2),
    ("ен", 2),
    ("ило", 2),
    ("ыло", 2),
    ("ено", 2),
    ("ят", 2),
    ("ует", 2),
    ("уют", 2),
    ("ит", 2),
    ("ыт", 2),
    ("ены", 2),
    ("ить", 2),
    ("ыть", 2),
    ("ишь", 2),
    ("ую", 2),
    ("ю", 2),
];

const NOUN: &[&str] = &[
    "а", "ев", "ов", "ие", "ье", "е", "иями", "ями", "ами", "еи", "ии", "и", "ией", "ей", "ой",
    "ий", "й", "иям", "ям", "ием", "ем", "ам", "ом", "о", "у", "ах", "иях", "ях", "ы", "ь", "ию",
    "ью", "ю", "ия", "ья", "я",
];

const DERIVATIONAL: &[&str] = &["ост", "ость"];

fn is_vowel(c: char) -> bool {
    VOWELS.contains(&c)
}

fn is_cyrillic(c: char) -> bool {
    matches!(c, '\u{0400}'..='\u{04FF}')
}

/// Working state: the word as chars plus the fixed region starts.
struct Word {
    chars: Vec<char>,
    rv: usize,
    r2: usize,
}

impl Word {
    fn new(token: &str) -> Self {
        let chars: Vec<char> = token
            .chars()
            .map(|c| if c == 'ё' { 'е' } else { c })
            .collect();
        let (rv, r2) = regions(&chars);
        Word { chars, rv, r2 }
    }

    fn len(&self) -> usize {
        self.chars.len()
    }

    fn has_suffix_in_rv(&self, suffix: &str) -> bool {
        let k = suffix.chars().count();
        self.len() >= self.rv + k
            && self.chars[self.len() - k..]
                .iter()
                .copied()
                .eq(suffix.chars())
    }

    /// Longest suffix from `table` that lies inside RV, with its tag and length.
    fn longest<'a, T: Copy>(&self, table: &'a [(&'a str, T)]) -> Option<(usize, T)> {
        table
            .iter()
            .filter(|(s, _)| self.has_suffix_in_rv(s))
            .map(|(s, tag)| (s.chars().count(), *tag))
            .max_by_key(|(k, _)| *k)
    }

    fn longest_plain(&self, table: &[&str]) -> Option<usize> {
        table
            .iter()
            .filter(|s| self.has_suffix_in_rv(s))
            .map(|s| s.chars().count())
            .max()
    }

    /// Whether the char just before a `k`-long suffix is `а`/`я` inside RV.
    fn after_a_or_ya(&self, k: usize) -> bool {
        let start = self.len() - k;
        start > self.rv && matches!(self.chars[start - 1], 'а' | 'я')
    }

    fn cut(&mut self, k: usize) {
        let n = self.len() - k;
        self.chars.truncate(n);
    }

    /// Removes a suffix from a tagged table, honouring the `а`/`я` guard.
    fn remove_tagged(&mut self, table: &[(&str, u8)]) -> bool {
        match self.longest(table) {
            Some((k, 1)) if !self.after_a_or_ya(k) => false,
            Some((k, _)) => {
                self.cut(k);
                true
            }
            None => false,
        }
    }

    fn remove_plain(&mut self, table: &[&str]) -> bool {
        match self.longest_plain(table) {
            Some(k) => {
                self.cut(k);
                true
            }
            None => false,
        }
    }

    fn adjectival(&mut self) -> bool {
        if !self.remove_plain(ADJECTIVE) {
            return false;
        }
        self.remove_tagged(PARTICIPLE);
        true
    }

    fn derivational(&mut self) {
        if let Some(k) = self.longest_plain(DERIVATIONAL) {
            if self.len() - k >= self.r2 {
                self.cut(k);
            }
        }
    }

    fn ends_with_double_n(&self) -> bool {
        self.len() >= self.rv + 2 && self.chars[self.len() - 2..] == ['н', 'н']
    }

    fn tidy_up(&mut self) {
        if let Some(k) = self.longest_plain(&["ейше", "ейш"]) {
            self.cut(k);
            if self.ends_with_double_n() {
                self.cut(1);
            }
        } else if self.ends_with_double_n() || self.has_suffix_in_rv("ь") {
            self.cut(1);
        }
    }
}

/// RV starts after the first vowel; R2 is the standard R1-of-R1 region.
/// Both default to the word length when the pattern is absent.
fn regions(chars: &[char]) -> (usize, usize) {
    let n = chars.len();
    let first_vowel = chars.iter().position(|&c| is_vowel(c));
    let Some(v) = first_vowel else {
        return (n, n);
    };
    let rv = v + 1;

    // vowel, then non-vowel: R1 begins after that non-vowel
    let r1 = match chars[rv..].iter().position(|&c| !is_vowel(c)) {
        Some(i) => rv + i + 1,
        None => return (rv, n),
    };
    let next_vowel = match chars[r1..].iter().position(|&c| is_vowel(c)) {
        Some(i) => r1 + i + 1,
        None => return (rv, n),
    };
    let r2 = match chars[next_vowel..].iter().position(|&c| !is_vowel(c)) {
        Some(i) => next_vowel + i + 1,
        None => n,
    };
    (rv, r2)
}

/// Stems one lowercase token. Tokens without Cyrillic letters are returned
/// unchanged; the output is never longer than the input.
pub fn stem(token: &str) -> String {
    if !token.chars().any(is_cyrillic) {
        return token.to_owned();
    }
    let mut w = Word::new(token);

    if !w.remove_tagged(PERFECTIVE_GERUND) {
        w.remove_plain(REFLEXIVE);
        if !w.adjectival() && !w.remove_tagged(VERB) {
            w.remove_plain(NOUN);
        }
    }
    if w.has_suffix_in_rv("и") {
        w.cut(1);
    }
    w.derivational();
    w.tidy_up();

    w.chars.into_iter().collect()
}
