"""
Command dispatch: one analysis per invocation, turned into an AnalysisReport.

Exit hints: 0 success, 1 failed mathematical check, 2 input error,
3 resource limit.
"""

from functools import reduce
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from algebra.completion import (
    boolean_atoms_match_ultrafilters,
    boolean_profinite_powerset,
    check_boolean_center_preservation,
    check_mac_criterion,
    check_product_preservation,
    check_radical_quotient,
    check_self_iso,
    inverse_limit_profinite,
    macneille_mv,
    profinite_product,
    regularity_violations,
    verify_main_theorem,
)
from algebra.ideals import all_ideals, is_maximal, is_prime, is_principal, max_ideals, quotient, radical, rank
from algebra.isomorphism import canonical_decomposition
from algebra.mv_core import FiniteMvAlgebra, IsoWitness, validate_tables
from algebra.signatures import (
    SpectralSignature,
    count_to_json,
    divisibility_decision,
    sig_bounded_split,
    sig_equal,
    sig_has_trivial_completion,
    sig_mac_criterion,
    sig_macneille,
    sig_product,
    sig_profinite,
)
from cli.descriptions import (
    AlgebraDescription,
    build_algebra,
    build_signature,
    is_signature,
    load_description,
    raw_tables,
    subject_echo,
)
from cli.reports import AnalysisReport, reverify_witnesses
from core.errors import DescriptionError, MvLabError
from core.utils import PerformanceTimer, Settings, get_settings, logger

COMMANDS = ('validate', 'spectrum', 'ideals', 'complete', 'check', 'signature')
COMPLETE_METHODS = ('inverse-limit', 'maxf-product', 'macneille', 'both')
CHECKS = (
    'main-theorem', 'self-iso', 'mac-criterion', 'product-preservation', 'regularity',
    'center-preservation', 'radical-quotient', 'boolean-powerset',
)
SIGNATURE_QUERIES = (
    'profinite', 'macneille', 'mac-criterion', 'divisibility', 'equal',
    'trivial-completion', 'split', 'product',
)

# Ranks listed when a signature with families is shown
RANK_SAMPLE = 12


class AnalysisCommander:
    def __init__(self, settings: Optional[Settings] = None):
        self.settings = settings or get_settings()
        self.name = "Analysis Commander"
        self.witnesses: Dict[str, IsoWitness] = {}

    def run_files(
        self,
        command: str,
        path: Union[str, Path],
        subcommand: Optional[str] = None,
        with_path: Union[str, Path, None] = None,
        **flags: Any,
    ) -> AnalysisReport:
        """Load the description file(s), then run; unreadable input still yields a report"""
        try:
            description = load_description(path)
            other = load_description(with_path) if with_path else None
        except MvLabError as e:
            report = AnalysisReport({'file': str(path)}, _command_line(command, subcommand, flags),
                                    self.settings.tool_version)
            self._record_error(report, e)
            return report
        return self.run(command, description, subcommand, other, **flags)

    def run(
        self,
        command: str,
        description: AlgebraDescription,
        subcommand: Optional[str] = None,
        other: Optional[AlgebraDescription] = None,
        method: str = 'both',
        strict: bool = False,
        verify_witness: bool = False,
    ) -> AnalysisReport:
        flags = {'method': method, 'strict': strict}
        subject = subject_echo(description)
        if other is not None:
            subject = {'first': subject, 'second': subject_echo(other)}
        report = AnalysisReport(subject, _command_line(command, subcommand, flags), self.settings.tool_version)
        self.witnesses = {}

        try:
            with PerformanceTimer(report.command):
                self._process_command(report, command, subcommand, description, other, flags)
            if verify_witness and report.exit_hint == 0:
                report.result['witnesses_reverified'] = reverify_witnesses(report.to_json(), self.witnesses)
        except MvLabError as e:
            self._record_error(report, e)
        return report

    def _record_error(self, report: AnalysisReport, error: MvLabError) -> None:
        report.exit_hint = error.exit_code
        report.result['error'] = {
            'type': type(error).__name__,
            'message': str(error),
            'payload': error.payload,
        }
        report.diagnostics.append(f"{type(error).__name__}: {error}")
        logger(f"[{self.name}] {report.command} failed: {error}", 'error' if error.exit_code == 2 else 'warning')

    def _witness(self, report: AnalysisReport, name: str, witness: IsoWitness) -> None:
        self.witnesses[name] = witness
        report.add_witness(name, witness)

    def _process_command(self, report, command, subcommand, description, other, flags):
        if command == 'validate':
            self._validate(report, description)
        elif command == 'spectrum':
            self._spectrum(report, build_algebra(description))
        elif command == 'ideals':
            self._ideals(report, build_algebra(description))
        elif command == 'complete':
            self._complete(report, build_algebra(description), flags['method'])
        elif command == 'check':
            self._check(report, subcommand, description, other)
        elif command == 'signature':
            self._signature(report, subcommand, description, other, flags['strict'])
        else:
            logger(f"[{self.name}] Unknown command: {command}", 'error')
            raise DescriptionError(f"Unknown command {command!r}; expected one of {COMMANDS}")

    # ----- validate / spectrum / ideals -----

    def _validate(self, report: AnalysisReport, description: AlgebraDescription) -> None:
        names, oplus, neg, zero = raw_tables(description)
        checked = validate_tables(oplus, neg, zero)
        report.result.update({
            'valid': checked.ok,
            'size': len(names),
            'axioms': checked.as_dict(names),
        })
        if not checked.ok:
            failure = checked.first_failure
            witnesses = ', '.join(names[i] for i in failure.witness)
            report.diagnostics.append(f"Axiom '{failure.axiom}' fails at ({witnesses})")
            report.exit_hint = 1

    def _spectrum(self, report: AnalysisReport, algebra: FiniteMvAlgebra) -> None:
        decomposition = canonical_decomposition(algebra)
        report.result.update({
            'size': algebra.size,
            'maximal_ideals': [
                {
                    'members': m.names(),
                    'rank': rank(algebra, m),
                    'generator': _name(algebra, is_principal(algebra, m)),
                }
                for m in max_ideals(algebra)
            ],
            'radical': radical(algebra).names(),
            'decomposition': str(decomposition.multiset),
        })
        self._witness(report, 'canonical-decomposition', decomposition.witness)

    def _ideals(self, report: AnalysisReport, algebra: FiniteMvAlgebra) -> None:
        entries = []
        for ideal in all_ideals(algebra):
            proper = ideal.is_proper
            entries.append({
                'members': ideal.names(),
                'prime': proper and is_prime(algebra, ideal),
                'maximal': proper and is_maximal(algebra, ideal),
                'quotient_size': quotient(algebra, ideal).algebra.size,
            })
        report.result.update({'count': len(entries), 'ideals': entries})

    # ----- complete -----

    def _complete(self, report: AnalysisReport, algebra: FiniteMvAlgebra, method: str) -> None:
        if method not in COMPLETE_METHODS:
            raise DescriptionError(f"Unknown method {method!r}; expected one of {COMPLETE_METHODS}")
        builders = {
            'inverse-limit': inverse_limit_profinite,
            'maxf-product': profinite_product,
            'macneille': macneille_mv,
        }
        chosen = ['inverse-limit', 'maxf-product'] if method == 'both' else [method]
        for name in chosen:
            completion, completed = builders[name](algebra)
            report.result[name] = {
                'label': completion.label,
                'size': completion.size,
                'multiset': str(completed.multiset),
            }
            report.diagnostics.extend(completed.diagnostics)
            self._witness(report, name, completed.witness)
        if method == 'both':
            self._witness(report, 'main-theorem', verify_main_theorem(algebra))

    # ----- check -----

    def _check(self, report, name, description, other) -> None:
        if name == 'mac-criterion' and is_signature(description):
            decision = sig_mac_criterion(build_signature(description))
            self._holds(report, decision.holds, decision.diagnostic)
            return
        algebra = build_algebra(description)

        if name == 'main-theorem':
            self._witness(report, name, verify_main_theorem(algebra))
            self._holds(report, True)
        elif name == 'self-iso':
            decision = check_self_iso(algebra)
            report.result['generators'] = [
                {'ideal': m.names(), 'generator': _name(algebra, g)} for m, g in decision.generators
            ]
            self._witness(report, name, decision.witness)
            self._holds(report, decision.holds)
        elif name == 'mac-criterion':
            decision = check_mac_criterion(algebra)
            report.result['tau'] = [
                {'atom': algebra.names[a], 'ideal': m.names(), 'rank': rank(algebra, m)} for a, m in decision.tau
            ]
            if decision.witness is not None:
                self._witness(report, name, decision.witness)
            self._holds(report, decision.holds, *decision.diagnostics)
        elif name == 'product-preservation':
            second = build_algebra(self._require_other(name, other))
            self._witness(report, name, check_product_preservation(algebra, second))
            self._holds(report, True)
        elif name == 'regularity':
            violations = regularity_violations(algebra)
            report.result['violations'] = [
                {'prime': prime.names(), 'generated': generated.names()} for prime, generated in violations
            ]
            self._holds(report, not violations)
        elif name == 'center-preservation':
            self._witness(report, name, check_boolean_center_preservation(algebra))
            self._holds(report, True)
        elif name == 'radical-quotient':
            self._witness(report, name, check_radical_quotient(algebra))
            self._holds(report, True)
        elif name == 'boolean-powerset':
            self._witness(report, name, boolean_profinite_powerset(algebra))
            report.result['atoms_match_ultrafilters'] = boolean_atoms_match_ultrafilters(algebra)
            self._holds(report, report.result['atoms_match_ultrafilters'])
        else:
            logger(f"[{self.name}] Unknown check: {name}", 'error')
            raise DescriptionError(f"Unknown check {name!r}; expected one of {CHECKS}")

    def _holds(self, report: AnalysisReport, holds: bool, *notes: str) -> None:
        report.result['holds'] = holds
        report.diagnostics.extend(notes)
        if not holds:
            report.exit_hint = 1

    def _require_other(self, name: str, other: Optional[AlgebraDescription]) -> AlgebraDescription:
        if other is None:
            raise DescriptionError(f"{name} needs a second description (--with FILE)", {'field': 'with'})
        return other

    # ----- signature -----

    def _signature(self, report, query, description, other, strict) -> None:
        signature = build_signature(description)
        report.result['input'] = _show(signature)

        if query == 'profinite':
            report.result['profinite'] = _show(sig_profinite(signature))
        elif query == 'macneille':
            report.result['macneille'] = _show(sig_macneille(signature))
        elif query == 'mac-criterion':
            decision = sig_mac_criterion(signature)
            self._holds(report, decision.holds, decision.diagnostic)
        elif query == 'divisibility':
            report.result['decision'] = divisibility_decision(signature, strict=strict).as_dict()
        elif query == 'equal':
            second = build_signature(self._require_other(query, other))
            report.result['equal'] = sig_equal(signature, second)
        elif query == 'trivial-completion':
            report.result['trivial_completion'] = sig_has_trivial_completion(signature)
        elif query == 'split':
            parts = sig_bounded_split(signature)
            rebuilt = reduce(sig_product, parts, SpectralSignature())
            report.result['parts'] = [_show(p) for p in parts]
            report.result['product_matches'] = sig_equal(rebuilt, sig_profinite(signature))
        elif query == 'product':
            second = build_signature(self._require_other(query, other))
            report.result['product'] = _show(sig_product(signature, second))
        else:
            logger(f"[{self.name}] Unknown signature query: {query}", 'error')
            raise DescriptionError(f"Unknown signature query {query!r}; expected one of {SIGNATURE_QUERIES}")


def _name(algebra: FiniteMvAlgebra, element: Optional[int]) -> Optional[str]:
    return algebra.names[element] if element is not None else None


def _show(signature: SpectralSignature) -> Dict[str, Any]:
    shown = signature.as_dict()
    shown['summary'] = str(signature)
    if signature.families:
        shown[f'ranks_up_to_{RANK_SAMPLE}'] = [
            [n, count_to_json(c)] for n, c in signature.ranks_up_to(RANK_SAMPLE)
        ]
    return shown


def _command_line(command: str, subcommand: Optional[str], flags: Dict[str, Any]) -> str:
    parts: List[str] = [command]
    if subcommand:
        parts.append(subcommand)
    if command == 'complete':
        parts.append(f"--method {flags.get('method', 'both')}")
    if command == 'signature' and flags.get('strict'):
        parts.append('--strict-divisibility')
    return ' '.join(parts)
