//! Instance JSON: `{"id": "...", "points": [[x, y], [x_num, x_den, y_num, y_den], ...]}`.
//! Tours are plain JSON index arrays.

use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{Instance, Tour};
use crate::error::{Error, Result};
use crate::geometry::Point;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceDoc {
    pub id: String,
    pub points: Vec<Vec<i64>>,
}

fn to_i64(v: &BigInt) -> Result<i64> {
    v.to_i64()
        .ok_or_else(|| Error::InvalidInstance(format!("coordinate component {v} exceeds 64 bits")))
}

fn encode_point(p: &Point) -> Result<Vec<i64>> {
    if p.is_integral() {
        Ok(vec![to_i64(p.x.numer())?, to_i64(p.y.numer())?])
    } else {
        Ok(vec![
            to_i64(p.x.numer())?,
            to_i64(p.x.denom())?,
            to_i64(p.y.numer())?,
            to_i64(p.y.denom())?,
        ])
    }
}

fn decode_point(v: &[i64]) -> Result<Point> {
    let ratio = |num: i64, den: i64| {
        if den == 0 {
            Err(Error::InvalidInstance("zero denominator".into()))
        } else {
            Ok(BigRational::new(num.into(), den.into()))
        }
    };
    match *v {
        [x, y] => Ok(Point::int(x, y)),
        [xn, xd, yn, yd] => Ok(Point::new(ratio(xn, xd)?, ratio(yn, yd)?)),
        _ => Err(Error::InvalidInstance(format!(
            "point must have 2 or 4 integer components, got {}",
            v.len()
        ))),
    }
}

impl InstanceDoc {
    pub fn from_instance(inst: &Instance) -> Result<Self> {
        Ok(InstanceDoc {
            id: inst.id().to_string(),
            points: inst
                .points()
                .iter()
                .map(encode_point)
                .collect::<Result<_>>()?,
        })
    }

    pub fn to_instance(&self) -> Result<Instance> {
        let points = self
            .points
            .iter()
            .map(|v| decode_point(v))
            .collect::<Result<Vec<_>>>()?;
        Instance::new(self.id.clone(), points)
    }
}

pub fn instance_to_json(inst: &Instance) -> Result<String> {
    Ok(serde_json::to_string_pretty(&InstanceDoc::from_instance(
        inst,
    )?)?)
}

pub fn instance_from_json(text: &str) -> Result<Instance> {
    serde_json::from_str::<InstanceDoc>(text)?.to_instance()
}

pub fn read_instance(path: impl AsRef<Path>) -> Result<Instance> {
    instance_from_json(&fs::read_to_string(path)?)
}

pub fn write_instance(path: impl AsRef<Path>, inst: &Instance) -> Result<()> {
    fs::write(path, instance_to_json(inst)? + "\n")?;
    Ok(())
}

pub fn read_tour(path: impl AsRef<Path>, n: usize) -> Result<Tour> {
    let order: Vec<usize> = serde_json::from_str(&fs::read_to_string(path)?)?;
    Tour::new(order, n)
}

pub fn write_tour(path: impl AsRef<Path>, tour: &Tour) -> Result<()> {
    fs::write(path, serde_json::to_string(tour.order())? + "\n")?;
    Ok(())
}
