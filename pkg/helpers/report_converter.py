import datetime
import hashlib
import json
import os
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

import numpy as np

from langevin import format_polynomials
from metadata import __title__, __vendor__, __version__
from models import Complex, RateVector, ReactionNetwork, stoichiometric_matrix

REPORT_FORMAT = "rxnident-report"
REPORT_VERSION = "1.0"


def rational(value) -> str:
    """Exact values as "p/q" (or "p"); floats keep their repr so nothing is silently rounded."""
    if isinstance(value, (int, Fraction)):
        return str(Fraction(value))
    return repr(float(value))


def rationals(values: Sequence) -> List[str]:
    return [rational(v) for v in values]


def file_digest(file_path: str) -> Dict[str, str]:
    with open(file_path, 'rb') as file:
        digest = hashlib.sha256(file.read()).hexdigest()
    return {"path": os.path.basename(file_path), "sha256": digest}


def complex_payload(complex_: Complex, names: Sequence[str]) -> Dict:
    return {
        "label": ReactionNetwork.describe_complex(complex_, names),
        "coefficients": list(complex_.coefficients),
    }


def network_payload(net: ReactionNetwork) -> Dict:
    return {
        "name": net.name,
        "species": list(net.species_names),
        "reactions": [ReactionNetwork.describe(r, net.species_names) for r in net.reactions],
        "stoichiometric_matrix": [list(row) for row in stoichiometric_matrix(net)],
    }


def rates_payload(rates: Optional[RateVector]) -> Optional[List[str]]:
    return None if rates is None else rationals(rates.rates)


def generator_payload(gc) -> Dict:
    return {
        "species": list(gc.species),
        "blocks": [
            {
                "source": complex_payload(y, gc.species),
                "drift": rationals(gc.blocks[y].drift),
                "diffusion": [rationals(row) for row in gc.blocks[y].diffusion_matrix(gc.n_species)],
            }
            for y in gc.sources()
        ],
        "polynomials": format_polynomials(gc),
    }


def identifiability_payload(verdict, net: ReactionNetwork, with_witness: bool = True) -> Dict:
    payload = {
        "identifiable": verdict.identifiable,
        "model": verdict.semantics.value,
    }
    if not verdict.identifiable:
        payload["dependent_source"] = complex_payload(verdict.dependent_source, net.species_names)
        payload["dependent_reactions"] = list(verdict.dependent_reactions)
        payload["dependence_coefficients"] = rationals(verdict.dependence_coefficients)
        if with_witness:
            kappa, kappa_prime = verdict.witness_pair
            payload["witness"] = {"kappa": rates_payload(kappa), "kappa_prime": rates_payload(kappa_prime)}
    return payload


def confoundability_payload(verdict, net_a: ReactionNetwork, with_witness: bool = True) -> Dict:
    names = net_a.species_names
    payload = {
        "confoundable": verdict.confoundable,
        "model": verdict.semantics.value,
        "per_source": [
            {"source": complex_payload(y, names), "feasible": feasible}
            for y, feasible in sorted(verdict.per_source.items())
        ],
    }
    if verdict.confoundable and with_witness:
        kappa_a, kappa_b = verdict.witness
        payload["witness"] = {"kappa_a": rates_payload(kappa_a), "kappa_b": rates_payload(kappa_b)}
    if verdict.certificate is not None:
        certificate = verdict.certificate
        payload["certificate"] = {
            "source_mismatch": [complex_payload(y, names) for y in certificate.source_mismatch],
            "infeasible_sources": [
                {"source": complex_payload(item.source, names), "farkas": rationals(item.farkas)}
                for item in certificate.infeasible_sources
            ],
        }
    return payload


def conjugacy_payload(verdict) -> Dict:
    payload = {
        "status": verdict.status.value,
        "model": verdict.model.value,
        "permutations_tried": verdict.permutations_tried,
        "admissible_permutations": [list(p) for p in verdict.admissible],
    }
    witness = verdict.witness
    if witness is not None:
        payload["witness"] = {
            "permutation": list(witness.permutation),
            "scaling": rationals(witness.scaling),
            "kappa": rationals(witness.kappa),
            "beta": rationals(witness.beta),
            "kappa_prime": rationals(witness.kappa_prime),
            "residual": witness.residual,
            "exact": witness.exact,
        }
    return payload


def _floats(array: np.ndarray) -> List[float]:
    return [float(v) for v in np.atleast_1d(array)]


def simulation_payload(summary, species: Sequence[str]) -> Dict:
    return {
        "species": list(species),
        "horizon": summary.horizon,
        "paths": summary.paths,
        "mean": _floats(summary.mean),
        "std": _floats(summary.std),
        "standard_error": _floats(summary.standard_error),
        "stopped_fraction": summary.stopped_fraction,
    }


def build_report(command: str, inputs: Sequence[str], result: Dict, exit_code: int,
                 started: Optional[datetime.datetime] = None) -> Dict:
    """Everything except `metadata` depends only on the inputs and the seed."""
    finished = datetime.datetime.now()
    started = started or finished
    return {
        "reportFormat": REPORT_FORMAT,
        "specVersion": REPORT_VERSION,
        "command": command,
        "inputs": [file_digest(path) for path in inputs],
        "result": result,
        "exit_code": exit_code,
        "metadata": {
            "timestamp": finished.isoformat(),
            "elapsed_seconds": (finished - started).total_seconds(),
            "tools": [
                {
                    "vendor": __vendor__,
                    "name": __title__,
                    "version": __version__
                }
            ]
        },
    }


def dump_report(report: Dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False)


def save_report(report: Dict, output_path: str):
    with open(output_path, 'w', encoding='utf-8') as f:
        f.write(dump_report(report))
