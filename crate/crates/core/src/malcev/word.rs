use crate::error::{Error, Result};
use crate::lie::GradedAlphabet;

use super::{bch, NilpotentElement};

/// The image of a free-group word such as `"x y x^-1 y^-1"` or `"x^3 y^-2"`.
pub fn word_to_group(word: &str, alphabet: &GradedAlphabet, class: u32) -> Result<NilpotentElement> {
    let mut acc = NilpotentElement::identity(alphabet, class)?;
    let mut offset = 0;
    for token in word.split_whitespace() {
        let pos = offset + word[offset..].find(token).expect("token comes from word");
        offset = pos + token.len();
        let (name, exponent) = match token.split_once('^') {
            None => (token, 1),
            Some((name, e)) => {
                let k: i64 = e
                    .parse()
                    .map_err(|_| Error::Parse { pos: pos + name.len() + 1, message: format!("bad exponent {e:?}") })?;
                (name, k)
            }
        };
        if name.is_empty() {
            return Err(Error::Parse { pos, message: "missing generator before '^'".into() });
        }
        let letter = alphabet.letter(name).ok_or_else(|| Error::UnknownGenerator(name.into()))?;
        let g = NilpotentElement::generator(alphabet, letter, class)?.pow(exponent);
        acc = bch(&acc, &g)?;
    }
    Ok(acc)
}
