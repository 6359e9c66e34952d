//! Hilbert's hotel as an auditable state machine.
//!
//! Rooms and guests are never materialized. The whole state is the history
//! of reassignment plans, each an injection on room numbers with a known
//! freed-room set: Shift(k) frees rooms 1..k, Double frees the odd rooms.
//! Every query is computed by pushing a start room forward through the
//! history, or pulling a room number backward through it.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HotelError {
    #[error("no cohort {0} has checked in")]
    UnknownCohort(u64),
    #[error("no guest {0} is registered")]
    UnknownGuest(GuestId),
    #[error("a finite cohort must contain at least one guest")]
    EmptyCohort,
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("guest ids look like <cohort>:<index>, for example 0:7")]
pub struct GuestIdParseError;

/// A guest, named by arrival cohort and position within it. Cohort 0 is
/// the original full house; cohort i >= 1 arrived with the i-th
/// reassignment. Indices start at 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GuestId {
    pub cohort: u64,
    #[serde(with = "crate::serde_util::biguint_string")]
    pub index: BigUint,
}

impl GuestId {
    pub fn new(cohort: u64, index: impl Into<BigUint>) -> Self {
        GuestId {
            cohort,
            index: index.into(),
        }
    }
}

impl fmt::Display for GuestId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.cohort, self.index)
    }
}

impl FromStr for GuestId {
    type Err = GuestIdParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (cohort, index) = s.split_once(':').ok_or(GuestIdParseError)?;
        Ok(GuestId {
            cohort: cohort.parse().map_err(|_| GuestIdParseError)?,
            index: index.parse().map_err(|_| GuestIdParseError)?,
        })
    }
}

/// One reassignment of the whole hotel. Both forms are injective on room
/// numbers; the rooms they free are where the arriving cohort starts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlanStep {
    /// Room r moves to r + k; rooms 1..=k are freed for k arrivals.
    Shift(BigUint),
    /// Room r moves to 2r; every odd room is freed for countably many
    /// arrivals, guest i taking room 2i - 1.
    Double,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Occupant {
    Guest(GuestId),
    /// Unreachable under Shift and Double, which keep a full hotel full.
    /// Kept so callers of [`HotelState::guest_in`] handle the general
    /// contract rather than this plan algebra's accident.
    Vacant,
}

/// The hotel. Immutable; check-in operations return the successor state.
/// Plans are shared, so cloning and branching states is cheap.
#[derive(Clone, Debug)]
pub struct HotelState {
    plan: Arc<Vec<PlanStep>>,
}

impl HotelState {
    /// A fresh hotel with every room r occupied by cohort-0 guest r.
    pub fn new_full() -> Self {
        HotelState {
            plan: Arc::new(Vec::new()),
        }
    }

    /// Applied reassignments, oldest first. Step i (0-based) admitted
    /// cohort i + 1.
    pub fn plan(&self) -> &[PlanStep] {
        &self.plan
    }

    /// Cohorts checked in so far, the original full house included.
    pub fn cohorts(&self) -> u64 {
        self.plan.len() as u64 + 1
    }

    fn with_step(&self, step: PlanStep) -> Self {
        let mut plan = self.plan.as_ref().clone();
        plan.push(step);
        HotelState {
            plan: Arc::new(plan),
        }
    }

    /// One new guest: everyone moves up a room, the arrival takes room 1.
    pub fn check_in_one(&self) -> Self {
        self.with_step(PlanStep::Shift(BigUint::from(1u32)))
    }

    /// k new guests: everyone moves up k rooms, arrivals take rooms 1..=k.
    pub fn check_in_finite(&self, k: BigUint) -> Result<Self, HotelError> {
        if k == BigUint::ZERO {
            return Err(HotelError::EmptyCohort);
        }
        Ok(self.with_step(PlanStep::Shift(k)))
    }

    /// Countably many new guests: everyone moves to twice their room
    /// number, arrival i takes odd room 2i - 1.
    pub fn check_in_countably_many(&self) -> Self {
        self.with_step(PlanStep::Double)
    }

    /// The cohort's start placement and which later steps still apply.
    fn start_room(&self, guest: &GuestId) -> Result<(BigUint, usize), HotelError> {
        if guest.index == BigUint::ZERO {
            return Err(HotelError::UnknownGuest(guest.clone()));
        }
        if guest.cohort == 0 {
            return Ok((guest.index.clone(), 0));
        }
        let steps_before = usize::try_from(guest.cohort).expect("cohort count fits in usize");
        match self.plan.get(steps_before - 1) {
            None => Err(HotelError::UnknownCohort(guest.cohort)),
            Some(PlanStep::Shift(k)) if guest.index > *k => {
                Err(HotelError::UnknownGuest(guest.clone()))
            }
            Some(PlanStep::Shift(_)) => Ok((guest.index.clone(), steps_before)),
            Some(PlanStep::Double) => Ok((&guest.index * 2u32 - 1u32, steps_before)),
        }
    }

    /// The guest's current room: their start room pushed through every
    /// reassignment applied since their cohort arrived.
    pub fn room_of(&self, guest: &GuestId) -> Result<BigUint, HotelError> {
        let (start, applied_from) = self.start_room(guest)?;
        Ok(self.plan[applied_from..]
            .iter()
            .fold(start, |room, step| match step {
                PlanStep::Shift(k) => room + k,
                PlanStep::Double => room * 2u32,
            }))
    }

    /// The room's occupant, found by undoing reassignments newest first:
    /// each step either maps the room back to its pre-step number or
    /// identifies it as freed by that step, naming the cohort it admitted.
    pub fn guest_in(&self, room: &BigUint) -> Occupant {
        assert!(*room >= BigUint::from(1u32), "room numbers start at 1");
        let mut room = room.clone();
        for (idx, step) in self.plan.iter().enumerate().rev() {
            let cohort = idx as u64 + 1;
            match step {
                PlanStep::Double => {
                    if room.is_even() {
                        room /= 2u32;
                    } else {
                        return Occupant::Guest(GuestId::new(cohort, (room + 1u32) / 2u32));
                    }
                }
                PlanStep::Shift(k) => {
                    if room > *k {
                        room -= k;
                    } else {
                        return Occupant::Guest(GuestId::new(cohort, room));
                    }
                }
            }
        }
        Occupant::Guest(GuestId::new(0, room))
    }

    /// Spot-checks the hotel's claims on rooms 1..=sample: every room's
    /// occupant maps back to that room, and no two registered guests whose
    /// rooms land in the range share a room.
    pub fn audit(&self, sample: u64) -> AuditReport {
        assert!(sample >= 1, "audit needs at least one room");
        let limit = BigUint::from(sample);

        let mut rooms_occupied = 0u64;
        let mut round_trip = true;
        for r in 1..=sample {
            let room = BigUint::from(r);
            match self.guest_in(&room) {
                Occupant::Guest(guest) => {
                    rooms_occupied += 1;
                    if self.room_of(&guest) != Ok(room) {
                        round_trip = false;
                    }
                }
                Occupant::Vacant => {}
            }
        }

        let mut by_room: HashMap<BigUint, GuestId> = HashMap::new();
        let mut cohort_rooms: BTreeMap<u64, u64> = BTreeMap::new();
        let mut first_collision = None;
        for cohort in 0..self.cohorts() {
            let mut index = BigUint::from(1u32);
            loop {
                let guest = GuestId {
                    cohort,
                    index: index.clone(),
                };
                let room = match self.room_of(&guest) {
                    Ok(room) => room,
                    // The cohort is exhausted (finite cohort, index past
                    // its size).
                    Err(_) => break,
                };
                if room > limit {
                    break;
                }
                *cohort_rooms.entry(cohort).or_insert(0) += 1;
                if let Some(prior) = by_room.insert(room.clone(), guest.clone()) {
                    first_collision.get_or_insert(Collision {
                        room,
                        first: prior,
                        second: guest,
                    });
                }
                index += 1u32;
            }
        }

        AuditReport {
            sample,
            rooms_occupied,
            injective: first_collision.is_none(),
            round_trip,
            cohort_rooms,
            first_collision,
        }
    }
}

impl Default for HotelState {
    fn default() -> Self {
        Self::new_full()
    }
}

/// Two guests computed into the same room. Never produced by Shift and
/// Double plans; the audit carries it so the claim is checked, not assumed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Collision {
    #[serde(with = "crate::serde_util::biguint_string")]
    pub room: BigUint,
    pub first: GuestId,
    pub second: GuestId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub sample: u64,
    /// Rooms in 1..=sample with an occupant. Full-hotel plans keep this
    /// equal to sample.
    pub rooms_occupied: u64,
    pub injective: bool,
    /// Whether room_of(guest_in(r)) = r held for every occupied room.
    pub round_trip: bool,
    /// How many of the sampled rooms each cohort holds.
    #[serde(with = "crate::serde_util::u64_key_map")]
    pub cohort_rooms: BTreeMap<u64, u64>,
    pub first_collision: Option<Collision>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.injective && self.round_trip
    }
}
