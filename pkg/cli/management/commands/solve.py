import sys

from django.core.management.base import BaseCommand

from analysis.solve import solve_boolean, solve_nonneg, solve_signed
from cli.documents import command_errors, read_file
from empirical.algebra import format_weight
from empirical.models import support_model
from empirical.tableau import augment, build_incidence, linear_system, model_vector

NO_SOLUTION_RETURNCODE = 1


class Command(BaseCommand):
    """решить M X = V"""

    help = 'Solve the incidence system of a model over the signed, nonnegative or boolean semiring.'

    def add_arguments(self, parser):
        """добавить аргументы"""
        parser.add_argument('model')
        parser.add_argument('--semiring', choices=['signed', 'nonneg', 'boolean'], default='signed')

    def handle(self, *args, **options):
        """обработать"""
        with command_errors():
            model = read_file(options['model'], raw=options['semiring'] == 'signed').model
            tableau = build_incidence(model.scenario)
            solver = {'signed': solve_signed_text, 'nonneg': solve_nonneg_text, 'boolean': solve_boolean_text}
            solved, lines = solver[options['semiring']](model, tableau)
        for line in lines:
            self.stdout.write(line)
        if not solved:
            sys.exit(NO_SOLUTION_RETURNCODE)


def _column_text(tableau, j):
    return str(tableau.column(j))


def solve_signed_text(model, tableau):
    """решение со знаками или сертификат несовместности"""
    result = solve_signed(linear_system(tableau, model_vector(model, tableau)))
    if not result.solvable:
        lines = ['no signed solution', f'residual {format_weight(result.residual)}']
        lines.extend(f'row {i}: {format_weight(y)}' for i, y in sorted(result.certificate.items()))
        return False, lines
    lines = [f'signed solution, rank {result.rank}, nullity {result.nullity}']
    lines.extend(
        f'{_column_text(tableau, j)} {format_weight(x)}' for j, x in enumerate(result.particular) if x)
    return True, lines


def solve_nonneg_text(model, tableau):
    """глобальное распределение или его отсутствие"""
    outcome = solve_nonneg(augment(tableau, model_vector(model, tableau)))
    if not outcome.feasible:
        return False, ['no nonnegative solution']
    lines = ['nonnegative solution']
    lines.extend(f'{_column_text(tableau, j)} {format_weight(x)}' for j, x in enumerate(outcome.witness) if x)
    return True, lines


def solve_boolean_text(model, tableau):
    """допустимые столбцы булевой системы"""
    result = solve_boolean(tableau, model_vector(support_model(model), tableau))
    if not result.solvable:
        return False, ['no boolean solution']
    return True, ['boolean solution'] + [_column_text(tableau, j) for j in result.witness]
