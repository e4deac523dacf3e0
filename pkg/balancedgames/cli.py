"""
The `bg` command.

    bg counts --n 6
    bg vertices --n 3 --format csv
    bg check game.json
    bg sample --n 4 --seed 7 --count 10
    bg hamilton --n 3 --from u_123 --to d_2,23
"""

import argparse
import csv
import io
import json
import random
import sys
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, TextIO, Tuple

from pydantic import BaseModel

from balancedgames.utils import logger
from balancedgames.utils.config import settings as bg_settings
from balancedgames.types.errors import BalancedGamesException, InvalidInputError
from balancedgames.types.games import Game, coalitions, compact_label, label, members, parse_rational, size
from balancedgames.types.models import AdjacencyGraph, Ambient
from balancedgames.schemas.adjacency import adjacency_graph, hamiltonian_path
from balancedgames.schemas.balance import is_balanced
from balancedgames.schemas.cones import extremal_rays, incidence_table
from balancedgames.schemas.core import core_vertices
from balancedgames.schemas.mbc import enumerate_mbc
from balancedgames.schemas.polytope import count_table, enumerate_vertices, vertex_label
from balancedgames.schemas.sampler import sample_vertex, sampler_probabilities


class Subcommand(str, Enum):
    mbc = 'mbc'
    check = 'check'
    core = 'core'
    rays = 'rays'
    facets = 'facets'
    vertices = 'vertices'
    sample = 'sample'
    adjacency = 'adjacency'
    hamilton = 'hamilton'
    counts = 'counts'


class OutputFormat(str, Enum):
    json = 'json'
    csv = 'csv'
    dot = 'dot'
    text = 'text'


DEFAULT_FORMATS = {
    Subcommand.facets: OutputFormat.csv,
    Subcommand.adjacency: OutputFormat.dot,
}

# Subcommands that read a game instead of taking --n
GAME_INPUT = {Subcommand.check, Subcommand.core}

# Exit statuses
EXIT_OK = 0
EXIT_MALFORMED = 1
EXIT_DOMAIN = 2


class CommandConfig(BaseModel):
    subcommand: Subcommand
    n: Optional[int] = None
    format: Optional[OutputFormat] = None
    seed: Optional[int] = None
    count: int = 1
    input_path: Optional[str] = None
    allow_large: bool = False
    ambient: Ambient = Ambient.bg
    alpha: str = '1'
    source: Optional[str] = None
    target: Optional[str] = None
    probabilities: bool = False
    decimals: Optional[int] = None

    @property
    def output_format(self) -> OutputFormat:
        if self.format is not None: return self.format
        return DEFAULT_FORMATS.get(self.subcommand, OutputFormat.text)

    def validate_inputs(self) -> None:
        if self.subcommand in GAME_INPUT:
            return
        if self.n is None:
            raise InvalidInputError(f"{self.subcommand.value} needs --n")
        if self.subcommand == Subcommand.counts:
            # count_table enforces its own cap
            if not isinstance(self.n, int) or self.n < 1:
                raise InvalidInputError(f"Invalid player count: {self.n!r}")
        else:
            bg_settings.check_players(self.n)
        if self.subcommand == Subcommand.sample and self.seed is None:
            raise InvalidInputError("sample needs --seed")
        if self.count < 1:
            raise InvalidInputError("--count must be positive")
        if self.decimals is not None and self.decimals < 1:
            raise InvalidInputError("--decimals must be positive")


def _read_game(config: CommandConfig, stdin: TextIO) -> Game:
    if config.input_path in {None, '-'}:
        text = stdin.read()
    else:
        path = Path(config.input_path)
        if not path.is_file():
            raise InvalidInputError(f"No such file: {config.input_path}")
        text = path.read_text()
    return Game.from_json(text, max_players = bg_settings.max_players)


def _dumps(data) -> str:
    return json.dumps(data, indent = 2)


def _columns(n: int) -> List[int]:
    """
    Proper coalitions by size, then lexicographically.
    """
    return sorted(coalitions(n, proper = True), key = lambda S: (size(S), members(S)))


def _rational(value: Fraction, decimals: Optional[int]) -> str:
    if decimals is None: return str(value)
    return format(float(value), f'.{decimals}g')


"""
Renderers
"""

def _render_mbc(config: CommandConfig) -> str:
    collections = enumerate_mbc(config.n, allow_large = config.allow_large)
    if config.output_format == OutputFormat.json:
        return _dumps([b.to_dict() for b in collections])
    if config.output_format == OutputFormat.csv:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator = '\n')
        writer.writerow(['collection', 'coalitions', 'weights'])
        for i, b in enumerate(collections):
            writer.writerow([i, ' '.join(compact_label(s, config.n) for s, _ in b), ' '.join(str(w) for _, w in b)])
        return out.getvalue().rstrip('\n')
    lines = []
    for b in collections:
        lines.append(' '.join(f"{compact_label(s, config.n)}:{w}" for s, w in b))
    return '\n'.join(lines)


def _render_check(game: Game, config: CommandConfig) -> Tuple[str, int]:
    verdict = is_balanced(game)
    status = EXIT_OK if verdict.balanced else EXIT_DOMAIN
    if config.output_format == OutputFormat.json:
        return _dumps(verdict.to_dict()), status
    if verdict.balanced:
        return f"balanced\ncore point: {' '.join(verdict.witness.to_list())}", status
    sets = ' '.join(f"{compact_label(s, game.n)}:{w}" for s, w in verdict.violation)
    return f"not balanced\nviolated collection: {sets}\nslack: {verdict.slack}", status


def _render_core(game: Game, config: CommandConfig) -> str:
    description = core_vertices(game)
    if config.output_format == OutputFormat.json:
        return _dumps(description.to_dict())
    if description.is_empty:
        return "empty core"
    lines = [f"dimension: {description.dimension}"]
    lines += [' '.join(x.to_list()) for x in description.vertices]
    lines.append('effective: ' + ' '.join(compact_label(s, game.n) for s in description.effective))
    return '\n'.join(lines)


def _render_rays(config: CommandConfig) -> str:
    n = config.n
    rays = extremal_rays(n, config.ambient)
    alpha = parse_rational(config.alpha)
    if config.output_format == OutputFormat.json:
        data = {'ambient': config.ambient.value, 'rays': [r.to_dict() for r in rays]}
        if config.ambient == Ambient.bga:
            data['alpha'] = str(alpha)
            data['apex'] = {label(S): str(alpha) for S in coalitions(n) if S >> (n - 1) & 1}
        return _dumps(data)
    columns = list(coalitions(n)) if config.ambient == Ambient.bg else list(coalitions(n, proper = True))
    if config.output_format == OutputFormat.csv:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator = '\n')
        writer.writerow(['ray', 'kind'] + [compact_label(S, n) for S in columns])
        for r in rays:
            writer.writerow([r.name, r.kind.value] + [str(r.direction[S]) for S in columns])
        return out.getvalue().rstrip('\n')
    lines = []
    if config.ambient == Ambient.bga:
        lines.append(f"apex: {alpha} * u_{compact_label(1 << (n - 1), n)}")
    for r in rays:
        terms = ' '.join(f"{compact_label(S, n)}={r.direction[S]}" for S in columns if r.direction[S] != 0)
        lines.append(f"{r.name} [{r.kind.value}] {terms}")
    return '\n'.join(lines)


def _render_facets(config: CommandConfig) -> str:
    n = config.n
    table = incidence_table(n, config.ambient)
    rays = extremal_rays(n, config.ambient)
    if config.output_format == OutputFormat.json:
        return _dumps([
            {'facet': b.to_dict(), 'rays': [r.name for r in tight]}
            for b, tight in table
        ])
    if config.output_format == OutputFormat.text:
        return '\n'.join(
            f"{{{','.join(b.labels)}}}: {' '.join(r.name for r in tight)}"
            for b, tight in table
        )
    out = io.StringIO()
    writer = csv.writer(out, lineterminator = '\n')
    writer.writerow(['facet'] + [r.name for r in rays])
    for b, tight in table:
        names = {r.name for r in tight}
        writer.writerow([' '.join(b.labels)] + [int(r.name in names) for r in rays])
    return out.getvalue().rstrip('\n')


def _render_vertices(config: CommandConfig) -> str:
    n = config.n
    vertices = enumerate_vertices(n, allow_large = config.allow_large)
    if config.output_format == OutputFormat.json:
        return _dumps([{'label': vertex_label(D), 'sets': D.to_lists()} for D in vertices])
    if config.output_format == OutputFormat.csv:
        columns = _columns(n)
        out = io.StringIO()
        writer = csv.writer(out, lineterminator = '\n')
        writer.writerow(['vertex'] + [compact_label(S, n) for S in columns])
        for D in vertices:
            writer.writerow([vertex_label(D)] + [int(S in D) for S in columns])
        return out.getvalue().rstrip('\n')
    return '\n'.join(vertex_label(D) for D in vertices)


def _render_sample(config: CommandConfig) -> str:
    rng = random.Random(config.seed)
    samples = [sample_vertex(config.n, rng) for _ in range(config.count)]
    if config.output_format == OutputFormat.json:
        return _dumps([D.to_lists() for D in samples])
    return '\n'.join(json.dumps(D.to_lists()) for D in samples)


def _render_graph(g: AdjacencyGraph, config: CommandConfig) -> str:
    names = [vertex_label(D) if g.n == 3 else str(i) for i, D in enumerate(g.vertices)]
    if config.output_format == OutputFormat.json:
        return _dumps({
            'vertices': [{'index': i, 'label': names[i], 'sets': D.to_lists()} for i, D in enumerate(g.vertices)],
            'edges': sorted(g.edges),
        })
    lines = [f"graph bg_plus_{g.n} {{"]
    lines += [f'  {i} [label="{name}"];' for i, name in enumerate(names)]
    lines += [f"  {a} -- {b};" for a, b in sorted(g.edges)]
    lines.append('}')
    return '\n'.join(lines)


def _resolve_vertex(g: AdjacencyGraph, value: Optional[str]) -> int:
    if value is None:
        raise InvalidInputError("hamilton needs --from and --to")
    if value.isdigit():
        return int(value)
    wanted = value.replace('|', '∨')
    for i, D in enumerate(g.vertices):
        if vertex_label(D) == wanted: return i
    raise InvalidInputError(f"Unknown vertex {value!r}")


def _render_hamilton(config: CommandConfig) -> Tuple[str, int]:
    bg_settings.check_budget('hamilton', config.n, config.allow_large)
    g = adjacency_graph(config.n, allow_large = config.allow_large)
    source = _resolve_vertex(g, config.source)
    target = _resolve_vertex(g, config.target)
    path = hamiltonian_path(g, source, target)
    if path is None:
        return "no hamiltonian path", EXIT_DOMAIN
    if config.output_format == OutputFormat.json:
        return _dumps({'path': path, 'labels': [vertex_label(g.vertices[i]) for i in path]}), EXIT_OK
    return ' -> '.join(vertex_label(g.vertices[i]) for i in path), EXIT_OK


def _render_counts(config: CommandConfig) -> str:
    n = config.n
    table = count_table(n, allow_large = config.allow_large)
    if config.probabilities:
        probabilities = sampler_probabilities(n)
        if config.output_format == OutputFormat.json:
            return _dumps(probabilities.to_dict())
        lines = [f"p0({n}) = {_rational(probabilities.p0, config.decimals)}"]
        lines += [f"p1^{k}({n}) = {_rational(p, config.decimals)}" for k, p in enumerate(probabilities.p1, 1)]
        lines += [f"p2({n - k}) = {_rational(p, config.decimals)}" for k, p in enumerate(probabilities.p2, 1)]
        return '\n'.join(lines)
    if config.output_format == OutputFormat.json:
        return _dumps({str(k): table.row(k) for k in range(1, n + 1)})
    return '\n'.join(table.lines())


def _dispatch(config: CommandConfig, stdin: TextIO) -> Tuple[str, int]:
    command = config.subcommand
    if command in GAME_INPUT:
        game = _read_game(config, stdin)
        if command == Subcommand.check:
            return _render_check(game, config)
        return _render_core(game, config), EXIT_OK
    if command == Subcommand.hamilton:
        return _render_hamilton(config)
    if command == Subcommand.adjacency:
        return _render_graph(adjacency_graph(config.n, allow_large = config.allow_large), config), EXIT_OK
    renderers = {
        Subcommand.mbc: _render_mbc,
        Subcommand.rays: _render_rays,
        Subcommand.facets: _render_facets,
        Subcommand.vertices: _render_vertices,
        Subcommand.sample: _render_sample,
        Subcommand.counts: _render_counts,
    }
    return renderers[command](config), EXIT_OK


def run(
    config: CommandConfig,
    stdout: Optional[TextIO] = None,
    stderr: Optional[TextIO] = None,
    stdin: Optional[TextIO] = None,
) -> int:
    """
    Runs one command and returns its exit status.

    0 on success, 1 for malformed input and 2 for domain errors such as an
    unbalanced game or an exceeded enumeration budget.
    """
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    stdin = stdin if stdin is not None else sys.stdin
    try:
        config.validate_inputs()
        output, status = _dispatch(config, stdin)
    except InvalidInputError as e:
        stderr.write(f"error: {e.message}\n")
        return EXIT_MALFORMED
    except BalancedGamesException as e:
        stderr.write(f"error: {e.message}\n")
        return EXIT_DOMAIN
    stdout.write(output + '\n')
    if bg_settings.debug_enabled:
        logger.info(f"bg {config.subcommand.value} finished with status {status}")
    return status


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help = False)
    common.add_argument('--n', type = int, help = 'the player count')
    common.add_argument('--format', choices = [f.value for f in OutputFormat])
    common.add_argument('--allow-large', action = 'store_true', help = 'raise the enumeration caps')

    parser = argparse.ArgumentParser(prog = 'bg', description = 'Balanced TU-games: cones, polytope and cores.')
    sub = parser.add_subparsers(dest = 'subcommand', required = True)
    sub.add_parser('mbc', parents = [common], help = 'minimal balanced collections')
    for name in ('check', 'core'):
        p = sub.add_parser(name, parents = [common], help = f'{name} a game read from a JSON file')
        p.add_argument('input_path', nargs = '?', default = '-')
    for name in ('rays', 'facets'):
        p = sub.add_parser(name, parents = [common])
        p.add_argument('--ambient', choices = [a.value for a in Ambient], default = 'bg')
        p.add_argument('--alpha', default = '1')
    sub.add_parser('vertices', parents = [common], help = 'vertices of BG_+(n)')
    p = sub.add_parser('sample', parents = [common], help = 'uniform random vertices')
    p.add_argument('--seed', type = int)
    p.add_argument('--count', type = int, default = 1)
    sub.add_parser('adjacency', parents = [common], help = 'the adjacency graph of BG_+(n)')
    p = sub.add_parser('hamilton', parents = [common], help = 'a Hamiltonian path between two vertices')
    p.add_argument('--from', dest = 'source')
    p.add_argument('--to', dest = 'target')
    p = sub.add_parser('counts', parents = [common], help = 'vertex counts of BG_+(k) for k <= n')
    p.add_argument('--probabilities', action = 'store_true')
    p.add_argument('--decimals', type = int)
    return parser


def parse_args(argv: Optional[List[str]] = None) -> CommandConfig:
    args = vars(build_parser().parse_args(argv))
    return CommandConfig(**{k: v for k, v in args.items() if v is not None})


def main(argv: Optional[List[str]] = None) -> None:
    config = parse_args(argv)
    sys.exit(run(config))


if __name__ == '__main__':
    main()
