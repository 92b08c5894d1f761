"""
Tempograph (c) 2026 The Tempograph Authors

SPDX-License-Identifier: MIT

The command line surface: one subcommand per operation on a snapshot.
"""

import argparse
import json
import sys
from typing import Any, Callable, Dict, List, Optional, TextIO

from . import __version__, __copyright__
from .audit import AUDIT_FORMAT_VERSION, write_audit
from .config import TempographConfig
from .embed import create_encoder
from .eval import (
    compare_kgs,
    comparison_table,
    load_dataset,
    report_lines,
    report_table,
    run_eval,
)
from .evolve import Evolver, corpus_clock, load_corpus
from .fixtures import WorldSpec, generate_world, write_world
from .graph import FORMAT_VERSION, GraphStore, snapshot_load, snapshot_save
from .helpers import dump_json_line
from .log import setup_logging
from .oracle import PROMPT_VERSION, create_oracle
from .reason import Reasoner
from .types import Entity, RelationSchema, Timestamp, UNKNOWN
from .types.exceptions import TempographBaseException, ValidationException


class CommandLineParser(argparse.ArgumentParser):
    """Usage errors raise instead of exiting, so they share the exit code of
    every other validation error."""

    def error(self, message: str):
        raise ValidationException("{}: {}".format(self.prog, message))


class TempographMain:
    """
    Binds the library to ``argv``. Every command reads its inputs, runs one
    library operation and prints its primary output to ``stdout``; logs and
    errors go to ``stderr``.
    """

    commands: Dict[str, Callable[[argparse.Namespace], None]]

    cfg: Optional[TempographConfig]

    def __init__(self, stdout: TextIO = None, stderr: TextIO = None):
        self.stdout = stdout if stdout is not None else sys.stdout
        self.stderr = stderr if stderr is not None else sys.stderr
        self.cfg = None
        self.commands = {
            "init": self.cmd_init,
            "update": self.cmd_update,
            "ask": self.cmd_ask,
            "eval": self.cmd_eval,
            "dump": self.cmd_dump,
            "gen-world": self.cmd_gen_world,
        }

    def register_all_arguments(self, parser: argparse.ArgumentParser):
        parser.add_argument(
            "-v",
            "--verbose",
            help="Verbosity level (can be used multiple times)",
            action="count",
            default=0,
        )
        sub = parser.add_subparsers(dest="command", metavar="command")
        sub.required = True

        init = sub.add_parser("init", help="Create an empty store with relation schemas")
        init.add_argument("--schema", required=True, help="JSON list of relation schemas")
        init.add_argument("--out", required=True, help="Snapshot to write")

        update = sub.add_parser("update", help="Evolve a store from a document corpus")
        update.add_argument("--kg", required=True, help="Snapshot to read")
        update.add_argument("--docs", required=True, help="Corpus (.jsonl or .txt)")
        update.add_argument("--config", help="JSON configuration file")
        update.add_argument("--out", help="Snapshot to write, defaults to --kg")
        update.add_argument("--audit", help="Write the merge decisions as JSONL")
        update.add_argument(
            "--now",
            help="Clock for confidence decay (ISO-8601), defaults to the newest "
            "publication date in the corpus",
        )

        ask = sub.add_parser("ask", help="Answer one question")
        ask.add_argument("--kg", required=True, help="Snapshot to read")
        ask.add_argument("--question", required=True)
        ask.add_argument("--query-time", help="ISO-8601 time the question refers to")
        ask.add_argument("--config", help="JSON configuration file")
        ask.add_argument("--audit", help="Write the reasoning trace as JSONL")

        evaluate = sub.add_parser("eval", help="Measure accuracy on a QA dataset")
        evaluate.add_argument("--kg", required=True, help="Snapshot to read")
        evaluate.add_argument("--dataset", required=True, help="QA dataset (.jsonl)")
        evaluate.add_argument("--config", help="JSON configuration file")
        evaluate.add_argument("--runs", type=int)
        evaluate.add_argument("--seed", type=int)
        evaluate.add_argument("--jobs", type=int)
        evaluate.add_argument(
            "--compare-kg", help="Second snapshot, reported as after minus before"
        )
        evaluate.add_argument("--report", help="Write every verdict as JSONL")

        dump = sub.add_parser("dump", help="Print the content of a store")
        dump.add_argument("--kg", required=True, help="Snapshot to read")
        dump.add_argument("--entity", help="Only this entity id")

        gen = sub.add_parser("gen-world", help="Generate a synthetic world")
        gen.add_argument("--spec", help="JSON world spec, defaults apply without it")
        gen.add_argument("--out-dir", required=True)

    def parse_argv(self, argv: List[str]) -> argparse.Namespace:
        parser = CommandLineParser(
            description="Temporal knowledge graph evolution and question answering",
            prog="tempograph",
            formatter_class=argparse.RawTextHelpFormatter,
        )
        if "--version" in argv:
            self.print(
                "tempograph version {}\n{}\n\nsnapshot format {}, audit format {}, "
                "prompt version {}".format(
                    __version__,
                    __copyright__,
                    FORMAT_VERSION,
                    AUDIT_FORMAT_VERSION,
                    PROMPT_VERSION,
                )
            )
            sys.exit()

        self.register_all_arguments(parser)
        return parser.parse_args(argv)

    def run_from_cli(self, argv: List[str]) -> int:
        try:
            args = self.parse_argv(argv)
            setup_logging(args.verbose, self.stderr)
            self.commands[args.command](args)
        except TempographBaseException as ex:
            self.report_error(ex)
            return ex.exit_code
        return 0

    def report_error(self, ex: TempographBaseException):
        self.stderr.write("Error: {}\n".format(ex.message()))
        self.stderr.write(
            dump_json_line(
                {
                    "error": type(ex).__name__,
                    "exit_code": ex.exit_code,
                    "message": ex.plain_message(),
                }
            )
            + "\n"
        )

    def print(self, *lines: str):
        for line in lines:
            self.stdout.write(line + "\n")

    # ---- shared plumbing

    def load_config(self, args: argparse.Namespace, **overrides: Dict[str, Any]):
        self.cfg = TempographConfig.from_file(getattr(args, "config", None))
        if overrides:
            self.cfg = self.cfg.with_overrides(**overrides)
        return self.cfg

    @staticmethod
    def load_store(path: str) -> GraphStore:
        try:
            return snapshot_load(path)
        except OSError as ex:
            raise ValidationException("cannot read snapshot", str(ex))

    @staticmethod
    def parse_time(text: Optional[str]) -> Timestamp:
        return Timestamp.from_iso(text) if text else UNKNOWN

    # ---- commands

    def cmd_init(self, args: argparse.Namespace):
        try:
            with open(args.schema, "r", encoding="utf-8") as f:
                data = json.load(f)
        except OSError as ex:
            raise ValidationException("cannot read schema file", str(ex))
        except json.JSONDecodeError as ex:
            raise ValidationException(
                "invalid JSON at line {}: {}".format(ex.lineno, ex.msg), args.schema
            )
        if isinstance(data, dict):
            data = data.get("schemas")
        if not isinstance(data, list):
            raise ValidationException(
                "schema file must hold a list of relation schemas", args.schema
            )
        store = GraphStore()
        with store.batch():
            for record in data:
                try:
                    store.register_schema(RelationSchema.from_dict(record))
                except (KeyError, TypeError, AttributeError):
                    raise ValidationException("malformed relation schema", record)
        snapshot_save(store, args.out)
        self.print(
            "registered {} relation schema(s) in {}".format(len(store.schemas), args.out)
        )

    def cmd_update(self, args: argparse.Namespace):
        config = self.load_config(args)
        store = self.load_store(args.kg)
        try:
            documents = load_corpus(args.docs)
        except OSError as ex:
            raise ValidationException("cannot read corpus", str(ex))
        now = self.parse_time(args.now) if args.now else corpus_clock(documents)

        encoder = create_encoder(config.oracle)
        evolver = Evolver(
            store, create_oracle(config.oracle, encoder), encoder, config.evolution, now
        )
        report = evolver.update_from_corpus(documents)

        snapshot_save(store, args.out or args.kg)
        if args.audit:
            write_audit(
                args.audit, "update", config, list(report.records) + list(report.failures)
            )
        self.print(dump_json_line(report.summary()))

    def cmd_ask(self, args: argparse.Namespace):
        config = self.load_config(args)
        store = self.load_store(args.kg)
        encoder = create_encoder(config.oracle)
        reasoner = Reasoner(
            store, create_oracle(config.oracle, encoder), encoder, config.reasoner
        )
        answer = reasoner.answer(args.question, self.parse_time(args.query_time))
        if args.audit:
            write_audit(args.audit, "ask", config, answer.audit)
        self.print(
            "answer: {}".format(answer.value),
            "confidence mass: {:.6f}".format(answer.confidence_mass),
        )
        for route, votes in sorted(answer.route_votes.items()):
            self.print("route {}: {:.6f}".format(route, votes))

    def cmd_eval(self, args: argparse.Namespace):
        config = self.load_config(
            args, eval={"runs": args.runs, "seed": args.seed, "jobs": args.jobs}
        )
        store = self.load_store(args.kg)
        try:
            dataset = load_dataset(args.dataset)
        except OSError as ex:
            raise ValidationException("cannot read dataset", str(ex))

        if args.compare_kg:
            comparison = compare_kgs(
                dataset, store, self.load_store(args.compare_kg), config
            )
            self.print(comparison_table(comparison), dump_json_line(comparison.summary()))
            lines = report_lines(comparison.before) + report_lines(comparison.after)
        else:
            report = run_eval(dataset, store, config)
            self.print(report_table(report), dump_json_line(report.summary()))
            lines = report_lines(report)
        if args.report:
            with open(args.report, "w", encoding="utf-8", newline="\n") as f:
                f.write("\n".join(lines) + "\n")

    def cmd_dump(self, args: argparse.Namespace):
        store = self.load_store(args.kg)
        if args.entity:
            ids = [store.get_entity(args.entity).id]
        else:
            ids = store.entity_ids()
            self.print("schemas:")
            for schema in store.schemas:
                self.print(
                    "  {}{}".format(schema, " (exclusive)" if schema.exclusive else "")
                )
        for entity_id in ids:
            self.print(*entity_listing(store, store.get_entity(entity_id)))

    def cmd_gen_world(self, args: argparse.Namespace):
        spec = WorldSpec.from_file(args.spec) if args.spec else WorldSpec()
        world = generate_world(spec)
        paths = write_world(world, args.out_dir)
        for role in sorted(paths):
            self.print("{}: {}".format(role, paths[role]))
        self.print(dump_json_line(world.description()["accuracy"]))


def entity_listing(store: GraphStore, entity: Entity) -> List[str]:
    """
    An entity with its plain properties, every exclusive slot candidate with
    its confidence, and its outgoing edges ordered by relation and interval.
    """
    lines = ["{} ({}: {})".format(entity.id, entity.type, entity.name)]
    if entity.description:
        lines.append('  desc: "{}"'.format(entity.description))
    for key, value in entity.properties.plain_items():
        lines.append("  {} = {}".format(key, value))
    for key, slot in entity.properties.slot_items():
        lines.append("  {}:".format(key))
        for candidate in sorted(slot, key=lambda c: (-c.confidence, c.value)):
            lines.append(
                "    {} conf={:.4f} count={} last_seen={}".format(
                    candidate.value,
                    candidate.confidence,
                    candidate.frequency_count,
                    candidate.last_seen.render(),
                )
            )
    edges = sorted(
        store.find_edges(entity.id),
        key=lambda e: (e.relation, e.interval.key(), e.target),
    )
    for edge in edges:
        lines.append(
            "  -[{}]-> {} [{}, {}]".format(
                edge.relation,
                store.get_entity(edge.target).name,
                edge.interval.start.render(),
                edge.interval.end.render(),
            )
        )
    return lines


def main():
    sys.exit(TempographMain().run_from_cli(sys.argv[1:]))
