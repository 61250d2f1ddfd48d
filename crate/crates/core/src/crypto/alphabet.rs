/// Letter table: `A = 1, ..., Z = 26`, with 27..31 read back as `X, Y, Z, X, Y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    letters: Vec<char>,
    extension: Vec<char>,
}

impl Default for Alphabet {
    fn default() -> Self {
        Alphabet { letters: ('A'..='Z').collect(), extension: vec!['X', 'Y', 'Z', 'X', 'Y'] }
    }
}

impl Alphabet {
    pub fn size(&self) -> usize {
        self.letters.len()
    }

    /// Case-insensitive.
    pub fn number_of(&self, c: char) -> Option<u64> {
        let c = c.to_ascii_uppercase();
        self.letters.iter().position(|&l| l == c).map(|i| i as u64 + 1)
    }

    pub fn letter_of(&self, n: u64) -> Option<char> {
        let n = usize::try_from(n).ok()?;
        if n == 0 {
            return None;
        }
        let i = n - 1;
        if i < self.letters.len() {
            Some(self.letters[i])
        } else {
            self.extension.get(i - self.letters.len()).copied()
        }
    }
}
