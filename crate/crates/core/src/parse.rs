//! Element literals: words (`x0^-1 x1 x0`), breakpoint lists
//! (`0:0; 1/2:1/4; 3/4:1/2; 1:1`) and tree pairs (`(*,(*,*))|((*,*),*)`).

use crate::error::Result;
use crate::pl::PlMap;
use crate::presentation::{eval_word, Word};
use crate::treepair::TreePair;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiteralKind {
    Word,
    Breakpoints,
    TreePair,
}

pub fn literal_kind(text: &str) -> LiteralKind {
    if text.contains('|') {
        LiteralKind::TreePair
    } else if text.contains(':') {
        LiteralKind::Breakpoints
    } else {
        LiteralKind::Word
    }
}

/// Parses any of the three literal forms into a reduced tree pair.
pub fn parse_element(text: &str) -> Result<TreePair> {
    match literal_kind(text) {
        LiteralKind::TreePair => Ok(TreePair::parse_at(text, 0)?.reduce()),
        LiteralKind::Breakpoints => Ok(TreePair::from_pl(&PlMap::parse_at(text, 0)?)),
        LiteralKind::Word => Ok(eval_word(&Word::parse_at(text, 0)?)),
    }
}
