import json
import logging
import multiprocessing
import time
from dataclasses import dataclass, field
from typing import NamedTuple

from tqdm import tqdm

from constants import CHUNK_SIZE, REPORT_SCHEMA

logger = logging.getLogger(__name__)


@dataclass
class AxiomResult:
    """
    Verdict of one checked property.

    Attributes:
    - id (str): Property identifier.
    - passed (bool): Whether every checked instance held.
    - expected (bool | None): Expected verdict; None marks an informational meter.
    - witness (dict | None): First failing instance, JSON-ready.
    - max_defect (float): Largest raw residual seen.
    - checked (int): Number of instances that met the hypotheses.
    """
    id: str
    passed: bool
    expected: bool | None = True
    witness: dict | None = None
    max_defect: float = 0.0
    checked: int = 0

    @property
    def met(self):
        return self.expected is None or self.passed == self.expected

    def to_json(self):
        return {
            "id": self.id,
            "pass": self.passed,
            "expected": self.expected,
            "witness": self.witness,
            "max_defect": float(self.max_defect),
            "checked": self.checked,
        }


@dataclass
class CheckReport:
    campaign: str
    space: dict | None
    axioms: list[AxiomResult]
    seed: int | None = None
    params: dict = field(default_factory=dict)

    @property
    def consistent(self):
        return all(a.met for a in self.axioms)

    def axiom(self, axiom_id):
        for a in self.axioms:
            if a.id == axiom_id:
                return a
        raise KeyError(axiom_id)

    def to_json(self):
        return {
            "schema": REPORT_SCHEMA,
            "campaign": self.campaign,
            "space": self.space,
            "seed": self.seed,
            "params": self.params,
            "axioms": [a.to_json() for a in self.axioms],
            "consistent": self.consistent,
        }

    def dumps(self):
        return json.dumps(self.to_json(), indent=2)


class AxiomTally:
    """
    Accumulates observations of one property over a stream of samples.

    Attributes:
    - axiom_id (str): Property identifier.
    - tol (float): Defects above tol count as failures unless the caller decides otherwise.
    - expected (bool | None): Expected verdict carried into the AxiomResult.
    """
    def __init__(self, axiom_id, tol, expected=True):
        self.axiom_id = axiom_id
        self.tol = tol
        self.expected = expected
        self.passed = True
        self.witness = None
        self.max_defect = 0.0
        self.checked = 0

    def observe(self, defect, witness=None, failed=None):
        """
        Record one instance.

        Parameters:
        - defect (float): Raw residual of the instance.
        - witness (callable | None): Builds the JSON witness; only called on the first failure.
        - failed (bool | None): Overrides the defect > tol rule when given.

        Returns:
        - bool: True if the instance failed.
        """
        self.checked += 1
        defect = float(defect)
        if defect > self.max_defect:
            self.max_defect = defect
        if failed is None:
            failed = defect > self.tol
        if failed:
            self.passed = False
            if self.witness is None and witness is not None:
                self.witness = witness()
                logger.debug("%s: witness found after %d instances", self.axiom_id, self.checked)
        return failed

    def merge(self, other):
        self.checked += other.checked
        self.max_defect = max(self.max_defect, other.max_defect)
        if not other.passed:
            self.passed = False
            if self.witness is None:
                self.witness = other.witness
        return self

    def result(self):
        return AxiomResult(
            id=self.axiom_id,
            passed=self.passed,
            expected=self.expected,
            witness=self.witness,
            max_defect=self.max_defect,
            checked=self.checked,
        )


class Chunk(NamedTuple):
    seed: int
    index: int
    size: int


def make_chunks(n_samples, seed, chunk_size=CHUNK_SIZE):
    chunks = []
    start = 0
    index = 0
    while start < n_samples:
        size = min(chunk_size, n_samples - start)
        chunks.append(Chunk(seed, index, size))
        start += size
        index += 1
    return chunks


def run_partitioned(task, n_samples, seed, workers=1, verbose=False, desc="campaign"):
    """
    Run a sampling task over fixed-size chunks and merge the tallies in chunk order.

    The chunking only depends on n_samples, so the merged tallies are identical whether the
    chunks run serially or on a process pool.

    Parameters:
    - task (callable): Picklable function Chunk -> list[AxiomTally], same ids in the same order for every chunk.
    - n_samples (int): Total number of samples.
    - seed (int): Campaign seed.
    - workers (int): Number of processes; 1 runs in-process.
    - verbose (bool): Show a progress bar.
    - desc (str): Progress bar label.

    Returns:
    - list[AxiomTally]: Merged tallies.
    """
    if n_samples < 1:
        raise ValueError("A campaign needs at least one sample.")

    chunks = make_chunks(n_samples, seed)
    start = time.perf_counter()

    if workers > 1 and len(chunks) > 1:
        nb_cores = min(workers, max(1, multiprocessing.cpu_count() - 1))
        logger.info("%s: %d chunks on %d processes", desc, len(chunks), nb_cores)
        with multiprocessing.Pool(processes=nb_cores) as pool:
            results = list(tqdm(pool.imap(task, chunks), total=len(chunks), desc=desc, disable=not verbose))
    else:
        logger.info("%s: %d chunks in-process", desc, len(chunks))
        results = [task(chunk) for chunk in tqdm(chunks, desc=desc, disable=not verbose)]

    merged = results[0]
    for tallies in results[1:]:
        for mine, other in zip(merged, tallies):
            mine.merge(other)

    logger.info("%s took %.2f sec", desc, time.perf_counter() - start)
    return merged
