"""Synthetic registry corpus with known resolution ground truth.

Deterministic per seed: the generator emits registration, mutation,
bankruptcy, and debt-enforcement records for invented companies and
persons, then injects controlled name variants:

    token permutations   "Alpine Metals AG"  -> "Metals Alpine AG"
    comma-first persons  "Hans Weber"        -> "Weber, Hans"
    punctuation noise    "Alpine Metals AG"  -> "Alpine-Metals, AG"
    middle initials      "Hans Weber"        -> "Hans R. Weber"

The first three share the base name's hub key, so resolution must merge
them; a middle initial adds a token and must stay a separate identity.
The truth file records both expectations so evaluation runs against a
known answer instead of eyeballing.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from pathlib import Path

from registrygraph.ingest.hubkeys import generate_hub_key
from registrygraph.ingest.records import EntityRef, RegistryRecord, write_records

DEFAULT_COMPANIES = 500
DEFAULT_PERSONS = 300

#: Geneva crypto desk used by macro-analytics fixtures; kept above ten
#: entries so top-ten rankings are fully populated.
CRYPTO_GENEVA_COUNT = 12

_ADJECTIVES = (
    "Alpine", "Nordic", "Helvetic", "Blue", "Crystal", "Global", "United",
    "Golden", "Silver", "Prime", "Urban", "Cedar", "Atlas", "Delta", "Orion",
    "Vega", "Aurora", "Zenith", "Nova", "Pioneer", "Lakeside", "Summit",
    "Meridian", "Pacific", "Royal",
)
_NOUNS = (
    "Metals", "Logistics", "Holdings", "Capital", "Textiles", "Robotics",
    "Pharma", "Energy", "Foods", "Marine", "Media", "Analytics",
    "Properties", "Ventures", "Systems", "Mining", "Trading", "Finance",
    "Optics", "Works", "Consulting", "Estates", "Brokers", "Labs", "Partners",
)
_LEGAL_FORMS = ("AG", "SA", "GmbH")
_FIRST_NAMES = (
    "Hans", "Anna", "Luca", "Marie", "Peter", "Julia", "Marco", "Nina",
    "David", "Clara", "Stefan", "Laura", "Thomas", "Elena", "Martin",
    "Sofia", "Andreas", "Livia", "Felix", "Greta",
)
_LAST_NAMES = (
    "Weber", "Mueller", "Rossi", "Keller", "Baumann", "Schneider", "Meier",
    "Huber", "Fontana", "Steiner", "Brunner", "Frei", "Moser", "Widmer",
    "Graf", "Kunz", "Bianchi", "Favre", "Roth", "Gerber",
)
_LOCATIONS = (
    "Geneva", "Zurich", "Basel", "Bern", "Lausanne", "Lugano", "St. Gallen",
    "Lucerne",
)
_PURPOSES = (
    "crypto asset management",
    "watch manufacturing",
    "software development",
    "food distribution",
    "real estate management",
    "private banking services",
    "pharmaceutical research",
    "logistics services",
)


@dataclass
class CorpusTruth:
    """Ground truth emitted alongside the records."""

    companies: int
    persons: int
    hub_variants: dict[str, list[str]] = field(default_factory=dict)
    non_merges: list[list[str]] = field(default_factory=list)
    crypto_geneva: list[str] = field(default_factory=list)

    def multi_variant_hubs(self) -> dict[str, list[str]]:
        return {k: v for k, v in self.hub_variants.items() if len(v) > 1}

    def as_dict(self) -> dict:
        return {
            "companies": self.companies,
            "persons": self.persons,
            "hub_variants": {k: list(v) for k, v in sorted(self.hub_variants.items())},
            "non_merges": [list(pair) for pair in self.non_merges],
            "crypto_geneva": list(self.crypto_geneva),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CorpusTruth":
        return cls(
            companies=data["companies"],
            persons=data["persons"],
            hub_variants={k: list(v) for k, v in data.get("hub_variants", {}).items()},
            non_merges=[list(p) for p in data.get("non_merges", [])],
            crypto_geneva=list(data.get("crypto_geneva", [])),
        )


def _company_names(count: int, rng: random.Random) -> list[str]:
    combos = [
        f"{adj} {noun} {form}"
        for adj in _ADJECTIVES
        for noun in _NOUNS
        for form in _LEGAL_FORMS
    ]
    if count > len(combos):
        raise ValueError(f"at most {len(combos)} distinct company names available")
    rng.shuffle(combos)
    return combos[:count]


def _person_names(count: int, rng: random.Random) -> list[str]:
    combos = [f"{first} {last}" for first in _FIRST_NAMES for last in _LAST_NAMES]
    if count > len(combos):
        raise ValueError(f"at most {len(combos)} distinct person names available")
    rng.shuffle(combos)
    return combos[:count]


def _permute(name: str) -> str:
    # swap the leading pair: "Alpine Metals AG" -> "Metals Alpine AG"
    tokens = name.split()
    tokens[0], tokens[1] = tokens[1], tokens[0]
    return " ".join(tokens)


def _punctuate(name: str) -> str:
    # "Alpine Metals AG" -> "Alpine-Metals, AG"
    tokens = name.split()
    return f"{tokens[0]}-{tokens[1]}, {' '.join(tokens[2:])}".rstrip()


def _comma_first(name: str) -> str:
    first, last = name.split(" ", 1)
    return f"{last}, {first}"


def _middle_initial(name: str, rng: random.Random) -> str:
    first, last = name.split(" ", 1)
    return f"{first} {rng.choice('ABCDEFGHKLMR')}. {last}"


class _Emitter:
    def __init__(self, truth: CorpusTruth):
        self.records: list[RegistryRecord] = []
        self.truth = truth
        self._counter = 0

    def note_name(self, name: str) -> None:
        key = generate_hub_key(name)
        variants = self.truth.hub_variants.setdefault(key, [])
        if name not in variants:
            variants.append(name)

    def add(self, rubric: str, date: str, location: str, structured, free_text: str):
        self._counter += 1
        record = RegistryRecord(
            record_id=f"shab-{self._counter:06d}",
            rubric=rubric,
            date=date,
            location=location,
            language="en",
            structured=structured,
            free_text=free_text,
        )
        self.records.append(record)
        for refs in structured.values():
            for ref in refs:
                self.note_name(ref.name)


def generate_corpus(
    companies: int = DEFAULT_COMPANIES,
    persons: int = DEFAULT_PERSONS,
    seed: int = 0,
) -> tuple[list[RegistryRecord], CorpusTruth]:
    """Build the synthetic record stream and its ground truth."""
    rng = random.Random(seed)
    company_names = _company_names(companies, rng)
    person_names = _person_names(persons, rng)
    truth = CorpusTruth(companies=companies, persons=persons)
    out = _Emitter(truth)
    used_persons: set[str] = set()

    for index, name in enumerate(company_names):
        registry_id = f"CHE-{100 + index // 1000}.{(index // 100) % 10}{(index // 10) % 10}{index % 10}.{rng.randrange(100, 999)}"
        if index < CRYPTO_GENEVA_COUNT:
            location, purpose = "Geneva", "crypto asset management"
        else:
            location = rng.choice(_LOCATIONS)
            purpose = rng.choice(_PURPOSES)
        capital = rng.randrange(100, 10000) * 1000
        year = rng.randrange(2019, 2024)
        month = rng.randrange(1, 12)
        base_date = f"{year}-{month:02d}-{rng.randrange(1, 28):02d}"
        if location == "Geneva" and purpose == "crypto asset management":
            truth.crypto_geneva.append(name)
        ref = EntityRef(
            kind="company",
            name=name,
            registry_id=registry_id,
            attrs={"nominal_capital": capital, "purpose": purpose, "location": location},
        )
        out.add(
            "HR01",
            base_date,
            location,
            {"SUBJECT": [ref]},
            f"{name}, {location}, new entity registered in the commercial "
            f"register. Purpose: {purpose}. Nominal capital: {capital} CHF.",
        )

        follow_date = f"{year}-{month + 1:02d}-{rng.randrange(1, 28):02d}"
        if index % 3 == 0:
            person = person_names[index % len(person_names)]
            used_persons.add(person)
            out.add(
                "KK03",
                follow_date,
                location,
                {
                    "SUBJECT": [EntityRef(kind="company", name=name, registry_id=registry_id)],
                    "LIQUIDATOR": [EntityRef(kind="person", name=person)],
                },
                f"Bankruptcy proceedings opened over {name}. Liquidator: {person}.",
            )
        else:
            out.add(
                "HR03",
                follow_date,
                location,
                {"SUBJECT": [EntityRef(kind="company", name=name, registry_id=registry_id)]},
                f"{name}: amendment of registered facts.",
            )

        if index % 5 == 0:
            variant = _permute(name)
            out.add(
                "HR03",
                follow_date,
                location,
                {"SUBJECT": [EntityRef(kind="company", name=variant)]},
                f"{variant}: publication under reordered listing.",
            )
        if index % 7 == 0:
            variant = _punctuate(name)
            out.add(
                "HR03",
                follow_date,
                location,
                {"SUBJECT": [EntityRef(kind="company", name=variant)]},
                f"{variant}: notice with archival punctuation.",
            )

    for index, person in enumerate(person_names):
        year = rng.randrange(2019, 2024)
        date = f"{year}-{rng.randrange(1, 13):02d}-{rng.randrange(1, 28):02d}"
        if person not in used_persons:
            out.add(
                "LS01",
                date,
                rng.choice(_LOCATIONS),
                {"DEBTOR_PERSON": [EntityRef(kind="person", name=person)]},
                f"Debt enforcement proceedings against {person}.",
            )
        if index % 6 == 0:
            variant = _comma_first(person)
            out.add(
                "LS02",
                date,
                rng.choice(_LOCATIONS),
                {"DEBTOR_PERSON": [EntityRef(kind="person", name=variant)]},
                f"Proceedings continued against {variant}.",
            )
        if index % 10 == 0:
            variant = _middle_initial(person, rng)
            truth.non_merges.append([person, variant])
            out.add(
                "LS01",
                date,
                rng.choice(_LOCATIONS),
                {"DEBTOR_PERSON": [EntityRef(kind="person", name=variant)]},
                f"Debt enforcement proceedings against {variant}.",
            )

    return out.records, truth


def write_corpus(
    directory: str | Path,
    companies: int = DEFAULT_COMPANIES,
    persons: int = DEFAULT_PERSONS,
    seed: int = 0,
) -> tuple[Path, Path]:
    """Write records.jsonl and truth.json; byte-stable for a given seed."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    records, truth = generate_corpus(companies, persons, seed)
    records_path = directory / "records.jsonl"
    truth_path = directory / "truth.json"
    write_records(records, records_path)
    truth_path.write_text(
        json.dumps(truth.as_dict(), sort_keys=True, ensure_ascii=False, indent=2) + "\n",
        encoding="utf-8",
    )
    return records_path, truth_path
