//! p-blocks from central characters reduced modulo a prime over p.

use std::collections::HashMap;

use serde::Serialize;

use crate::arith::{nu_p, p_part};
use crate::chartab::CharTable;
use crate::cyclotomic::{FqElem, FqReduction};
use crate::error::{Error, Result};
use crate::group::{aut_data_in_subgroup, Group, Subgroup};

#[derive(Clone, Debug, Serialize)]
pub struct DefectGroup {
    #[serde(skip)]
    pub subgroup: Subgroup,
    /// Representative of the defect class, an element of the group.
    pub y: usize,
    pub order: u64,
    pub is_abelian: bool,
    pub center_order: u64,
    pub zd_exponent: u64,
    /// Every cyclic subgroup of D is central in its normalizer in D.
    pub cyclic_self_centralizing: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Block {
    pub characters: Vec<usize>,
    pub defect: u32,
    /// Heights, aligned with `characters`.
    pub heights: Vec<u32>,
    pub is_principal: bool,
    pub defect_class: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub defect_group: Option<DefectGroup>,
}

impl Block {
    pub fn height_of(&self, chi: usize) -> Option<u32> {
        self.characters.iter().position(|&c| c == chi).map(|i| self.heights[i])
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockData {
    pub p: u64,
    /// ν_p(|G|).
    pub a: u32,
    pub blocks: Vec<Block>,
    pub block_of: Vec<usize>,
}

impl BlockData {
    pub fn block_for(&self, chi: usize) -> &Block {
        &self.blocks[self.block_of[chi]]
    }

    pub fn partition(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|b| b.characters.clone()).collect()
    }
}

/// ω_χ reduced at every class.
fn reduced_omegas(t: &CharTable, red: &FqReduction) -> Result<Vec<Vec<FqElem>>> {
    (0..t.characters.len())
        .map(|chi| (0..t.num_classes()).map(|k| red.reduce(&t.central_character(chi, k)?)).collect())
        .collect()
}

fn group_by_key(omegas: &[Vec<FqElem>], classes: &[usize]) -> Vec<Vec<usize>> {
    let mut index: HashMap<Vec<&FqElem>, usize> = HashMap::new();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for (chi, w) in omegas.iter().enumerate() {
        let key: Vec<&FqElem> = classes.iter().map(|&k| &w[k]).collect();
        let b = *index.entry(key).or_insert_with(|| {
            out.push(Vec::new());
            out.len() - 1
        });
        out[b].push(chi);
    }
    out
}

fn p_regular(t: &CharTable, p: u64) -> Vec<usize> {
    (0..t.num_classes()).filter(|&k| t.classes[k].elt_order % p != 0).collect()
}

/// Partition using agreement on all classes rather than only p-regular ones.
pub fn block_partition_all_classes(t: &CharTable, p: u64) -> Result<Vec<Vec<usize>>> {
    let red = FqReduction::new(p, t.exponent);
    let all: Vec<usize> = (0..t.num_classes()).collect();
    Ok(group_by_key(&reduced_omegas(t, &red)?, &all))
}

/// Partition computed in a different presentation of the residue field.
pub fn block_partition_with_field_rank(t: &CharTable, p: u64, rank: usize) -> Result<Vec<Vec<usize>>> {
    let red = FqReduction::with_field_rank(p, t.exponent, rank);
    Ok(group_by_key(&reduced_omegas(t, &red)?, &p_regular(t, p)))
}

pub fn block_partition(t: &CharTable, p: u64) -> Result<BlockData> {
    let a = nu_p(t.order, p);
    let n = t.characters.len();
    let red = FqReduction::new(p, t.exponent);
    let omegas = reduced_omegas(t, &red)?;
    let regular = p_regular(t, p);
    let parts = if a == 0 { (0..n).map(|c| vec![c]).collect() } else { group_by_key(&omegas, &regular) };

    let mut block_of = vec![0; n];
    let mut blocks = Vec::with_capacity(parts.len());
    for (bi, chars) in parts.into_iter().enumerate() {
        let codeg: Vec<u32> =
            chars.iter().map(|&c| a - nu_p(t.characters[c].degree(), p)).collect();
        let defect = *codeg.iter().max().unwrap();
        let heights: Vec<u32> = codeg.iter().map(|&x| defect - x).collect();
        let h0 = chars[heights.iter().position(|&h| h == 0).unwrap()];
        let defect_class = regular
            .iter()
            .copied()
            .find(|&k| {
                nu_p(t.classes[k].centralizer_order, p) == defect && !omegas[h0][k].is_zero()
            })
            .ok_or(Error::NoDefectClass(bi))?;
        for &c in &chars {
            block_of[c] = bi;
        }
        blocks.push(Block {
            is_principal: chars.contains(&0),
            characters: chars,
            defect,
            heights,
            defect_class,
            defect_group: None,
        });
    }
    Ok(BlockData { p, a, blocks, block_of })
}

/// Fills in D = a Sylow p-subgroup of C_G(y) for the defect-class representative y.
pub fn attach_defect_groups(g: &Group, bd: &mut BlockData) {
    let p = bd.p;
    for b in &mut bd.blocks {
        let y = g.classes()[b.defect_class].rep;
        let d = g.centralizer(y).sylow(g, p);
        let z = d.center(g);
        let cyclic_self_centralizing =
            d.members().iter().all(|&x| aut_data_in_subgroup(g, &d, x).aut_order() == 1);
        b.defect_group = Some(DefectGroup {
            y,
            order: d.order(),
            is_abelian: d.is_abelian(g),
            center_order: z.order(),
            zd_exponent: z.exponent(g),
            cyclic_self_centralizing,
            subgroup: d,
        });
    }
}

pub fn blocks_with_defect_groups(g: &Group, t: &CharTable, p: u64) -> Result<BlockData> {
    let mut bd = block_partition(t, p)?;
    attach_defect_groups(g, &mut bd);
    Ok(bd)
}

/// Whether χ(xy) ≠ 0 for x ∈ Z(D) and y the defect-class representative of the block.
pub fn omega_nonvanishing_witness(
    g: &Group,
    t: &CharTable,
    bd: &BlockData,
    block: usize,
    chi: usize,
    x: usize,
) -> Result<bool> {
    let b = &bd.blocks[block];
    let dg = b.defect_group.as_ref().ok_or(Error::ElementNotInZD)?;
    if !dg.subgroup.contains(x) || !dg.subgroup.center(g).contains(x) {
        return Err(Error::ElementNotInZD);
    }
    let k = g.class_of(g.mult(x, dg.y));
    Ok(!t.characters[chi].values[k].is_zero())
}

/// ν_p of |G|_p, exposed for callers that only hold a table.
pub fn sylow_order(t: &CharTable, p: u64) -> u64 {
    p_part(t.order, p)
}
