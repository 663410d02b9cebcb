//! Token-boundary phrase matching and string surgery shared by the
//! classifier and the rewrite passes.
//!
//! Matching is case-insensitive and apostrophe-insensitive (curly quotes
//! normalize to `'`), and a match never starts or ends in the middle of a
//! word: "grey" does not fire inside "greyhound".

/// Lowercased view of a string with a byte-offset map back into the original.
pub struct NormalizedText {
    chars: Vec<char>,
    /// Original byte offset each normalized char came from.
    starts: Vec<usize>,
    /// Original byte offset one past that char.
    ends: Vec<usize>,
}

/// Canonical phrase form: lowercase, ASCII apostrophes, collapsed whitespace.
pub fn normalize_phrase(phrase: &str) -> String {
    let mut out = String::with_capacity(phrase.len());
    let mut last_space = false;
    for c in phrase.trim().chars() {
        let c = if c == '\u{2019}' || c == '\u{2018}' { '\'' } else { c };
        if c.is_whitespace() {
            if !last_space {
                out.push(' ');
            }
            last_space = true;
        } else {
            for lc in c.to_lowercase() {
                out.push(lc);
            }
            last_space = false;
        }
    }
    out
}

impl NormalizedText {
    pub fn new(text: &str) -> Self {
        let mut chars = Vec::with_capacity(text.len());
        let mut starts = Vec::with_capacity(text.len());
        let mut ends = Vec::with_capacity(text.len());
        for (offset, c) in text.char_indices() {
            let c = if c == '\u{2019}' || c == '\u{2018}' { '\'' } else { c };
            for lc in c.to_lowercase() {
                chars.push(lc);
                starts.push(offset);
                ends.push(offset + c.len_utf8());
            }
        }
        NormalizedText { chars, starts, ends }
    }

    /// Byte spans (in the original text) where `phrase` occurs on token
    /// boundaries. `phrase` must already be normalized. Whitespace inside the
    /// phrase matches any run of whitespace.
    pub fn find(&self, phrase: &str) -> Vec<(usize, usize)> {
        let needle: Vec<char> = phrase.chars().collect();
        if needle.is_empty() || self.chars.is_empty() {
            return Vec::new();
        }
        let mut spans = Vec::new();
        let mut i = 0;
        while i < self.chars.len() {
            if let Some(end) = self.match_at(i, &needle) {
                let boundary_start = !needle[0].is_alphanumeric()
                    || i == 0
                    || !self.chars[i - 1].is_alphanumeric();
                let boundary_end = !needle[needle.len() - 1].is_alphanumeric()
                    || end == self.chars.len()
                    || !self.chars[end].is_alphanumeric();
                if boundary_start && boundary_end {
                    spans.push((self.starts[i], self.ends[end - 1]));
                    i = end;
                    continue;
                }
            }
            i += 1;
        }
        spans
    }

    /// Try to match `needle` starting at char index `i`; returns the char
    /// index one past the match.
    fn match_at(&self, mut i: usize, needle: &[char]) -> Option<usize> {
        let mut n = 0;
        while n < needle.len() {
            if needle[n] == ' ' {
                // one-or-more whitespace in the haystack
                if i >= self.chars.len() || !self.chars[i].is_whitespace() {
                    return None;
                }
                while i < self.chars.len() && self.chars[i].is_whitespace() {
                    i += 1;
                }
                n += 1;
            } else {
                if i >= self.chars.len() || self.chars[i] != needle[n] {
                    return None;
                }
                i += 1;
                n += 1;
            }
        }
        Some(i)
    }
}

/// Sentence spans: byte ranges ending after `.`, `!` or `?` (or at the end of
/// the text). Delimiters stay with their sentence.
pub fn sentence_spans(text: &str) -> Vec<(usize, usize)> {
    let mut spans = Vec::new();
    let mut start = 0;
    let mut last_non_space_end = 0;
    for (i, c) in text.char_indices() {
        if c == '.' || c == '!' || c == '?' {
            spans.push((start, i + c.len_utf8()));
            start = i + c.len_utf8();
        } else if !c.is_whitespace() {
            last_non_space_end = i + c.len_utf8();
        }
    }
    if last_non_space_end > start {
        spans.push((start, text.len()));
    }
    spans
}

/// Remove byte ranges from `text`. Ranges must be non-overlapping; they may
/// be unsorted.
pub fn remove_spans(text: &str, spans: &[(usize, usize)]) -> String {
    let mut sorted: Vec<(usize, usize)> = spans.to_vec();
    sorted.sort();
    let mut out = String::with_capacity(text.len());
    let mut cursor = 0;
    for (start, end) in sorted {
        if start > cursor {
            out.push_str(&text[cursor..start]);
        }
        cursor = cursor.max(end);
    }
    out.push_str(&text[cursor..]);
    out
}

/// Repair the scars left by phrase removal: collapse runs of spaces, drop
/// space before punctuation, merge duplicated commas, trim sentence-leading
/// separators, and re-capitalize sentence starts.
pub fn tidy(text: &str) -> String {
    let mut collapsed = String::with_capacity(text.len());
    let mut prev_space = false;
    for c in text.chars() {
        if c == ' ' || c == '\t' {
            if !prev_space {
                collapsed.push(' ');
            }
            prev_space = true;
        } else {
            prev_space = false;
            collapsed.push(c);
        }
    }

    // " ," -> ",", " ." -> ".", ",," -> ",", ", ," -> ","
    let mut fixed = String::with_capacity(collapsed.len());
    for c in collapsed.chars() {
        if matches!(c, ',' | '.' | '!' | '?' | ';' | ':') {
            while fixed.ends_with(' ') {
                fixed.pop();
            }
            if c == ',' && (fixed.ends_with(',') || fixed.is_empty()) {
                continue;
            }
        }
        fixed.push(c);
    }

    // per sentence: trim leading separators, capitalize first letter
    let mut out = String::with_capacity(fixed.len());
    for (start, end) in sentence_spans(&fixed) {
        let sentence = fixed[start..end]
            .trim_start_matches(|c: char| c.is_whitespace() || c == ',' || c == ';' || c == ':');
        if sentence.is_empty() {
            continue;
        }
        if !out.is_empty() {
            out.push(' ');
        }
        let mut chars = sentence.chars();
        match chars.next() {
            Some(first) if first.is_alphabetic() => {
                out.extend(first.to_uppercase());
                out.push_str(chars.as_str());
            }
            Some(first) => {
                out.push(first);
                out.push_str(chars.as_str());
            }
            None => {}
        }
    }
    out.trim().to_string()
}
