"""Command-line driver for the headline accuracy pipeline.

Subcommands: ingest-check, mine-csr, featurize, train, cotrain,
evaluate, analyze.  Configuration precedence is flags > config file >
built-in defaults; every randomized step requires an explicit seed.
Primary outputs are byte-deterministic for a fixed config and seed;
timestamps and environment details go to the run.log sidecar only.

Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__, _kernels, classifier, cotrain as cotrain_mod, pipeline
from .corpus import (
    CorpusError,
    DOMAINS,
    docs_for_task,
    load_corpus,
    load_embeddings,
    load_lexicons,
    load_relations,
    split_train_test,
    unlabeled_pool,
)
from .csrmine import MiningConfig, MiningError, load_rules, mine, save_rules
from .encoder import build_sequence_database
from .features import (
    FeatureError,
    TfidfModel,
    concat_vectors,
    misleading_body_features,
    write_feature_matrix,
)
from .metrics import (
    MetricError,
    domain_breakdown,
    precision_recall_f,
    save_breakdown,
    sign_test,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2

DEFAULTS = {
    "task": "ambiguous",
    "minsup": 0.02,
    "minconf": 0.8,
    "max_pattern_length": 5,
    "p": 10,
    "n": None,
    "iterations": 50,
    "split": "3:1",
    "stratify": False,
    "l2": 1e-4,
    "learning_rate": 0.5,
    "epochs": 400,
    "class_weighting": None,
    "summary_sentences": 3,
}

DataError = (CorpusError, MiningError, FeatureError, MetricError,
             classifier.TrainingError, classifier.SchemaMismatchError)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="headcheck", description=__doc__)
    parser.add_argument("--version", action="version", version=f"headcheck {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        cmd = sub.add_parser(name, help=help_text)
        cmd.add_argument("--config", type=Path, help="JSON config file (flags override it)")
        cmd.add_argument("--corpus", type=Path, help="line-delimited JSON corpus")
        cmd.add_argument("--lexicons", type=Path, help="lexicon directory")
        cmd.add_argument("--embeddings", type=Path, help="embedding text file")
        cmd.add_argument("--relations", type=Path, help="word-relation TSV (overrides lexicon dir)")
        cmd.add_argument("--inventory", type=Path, help="encoder inventory JSON")
        cmd.add_argument("--task", choices=("ambiguous", "misleading"))
        cmd.add_argument("--seed", type=int)
        cmd.add_argument("--split", help="train:test ratio, e.g. 3:1")
        cmd.add_argument("--stratify", action="store_const", const=True, default=None,
                         help="stratify the split by the task label")
        cmd.add_argument("--out", type=Path, help="output directory")
        return cmd

    add("ingest-check", "parse and validate a corpus")

    cmd = add("mine-csr", "mine class sequential rules from training headlines")
    cmd.add_argument("--minsup", type=float)
    cmd.add_argument("--minconf", type=float)
    cmd.add_argument("--max-len", type=int, dest="max_pattern_length")
    cmd.add_argument("--use-all", action="store_true",
                     help="mine on every labeled document instead of the train split")

    cmd = add("featurize", "export feature matrices as CSV")
    cmd.add_argument("--rules", type=Path, help="mined rule set (ambiguous task)")
    cmd.add_argument("--idf", type=Path, help="frozen idf artifact (misleading task)")

    cmd = add("train", "split, train, and evaluate one task's classifier")
    cmd.add_argument("--minsup", type=float)
    cmd.add_argument("--minconf", type=float)
    cmd.add_argument("--max-len", type=int, dest="max_pattern_length")
    cmd.add_argument("--l2", type=float)
    cmd.add_argument("--learning-rate", type=float, dest="learning_rate")
    cmd.add_argument("--epochs", type=int)
    cmd.add_argument("--class-weighting", choices=("none", "balanced"), dest="class_weighting")

    cmd = add("cotrain", "co-train the two misleading-task views")
    cmd.add_argument("--p", type=int)
    cmd.add_argument("--n", type=int)
    cmd.add_argument("--iterations", type=int)
    cmd.add_argument("--l2", type=float)
    cmd.add_argument("--learning-rate", type=float, dest="learning_rate")
    cmd.add_argument("--epochs", type=int)
    cmd.add_argument("--class-weighting", choices=("none", "balanced"), dest="class_weighting")
    cmd.add_argument("--sweep", help="comma-separated p grid, e.g. 2,5,10,20")
    cmd.add_argument("--checkpoints", help="comma-separated sweep iteration checkpoints")

    cmd = add("evaluate", "evaluate saved models on the held-out split")
    cmd.add_argument("--model", type=Path, help="supervised model JSON")
    cmd.add_argument("--model-head", type=Path)
    cmd.add_argument("--model-body", type=Path)
    cmd.add_argument("--rules", type=Path)
    cmd.add_argument("--idf", type=Path)
    cmd.add_argument("--model-b", type=Path, help="second system for the sign test")
    cmd.add_argument("--model-b-head", type=Path)
    cmd.add_argument("--model-b-body", type=Path)
    cmd.add_argument("--rules-b", type=Path)
    cmd.add_argument("--idf-b", type=Path)

    cmd = add("analyze", "domain breakdown of both pipelines over a corpus")
    cmd.add_argument("--amb-model", type=Path)
    cmd.add_argument("--amb-rules", type=Path)
    cmd.add_argument("--mis-model", type=Path)
    cmd.add_argument("--mis-model-head", type=Path)
    cmd.add_argument("--mis-model-body", type=Path)
    cmd.add_argument("--idf", type=Path)

    return parser


class RunConfig:
    """Merged view of defaults, config file, and flags."""

    def __init__(self, args: argparse.Namespace):
        merged = dict(DEFAULTS)
        if args.config is not None:
            _require_file(args.config, "config")
            try:
                file_values = json.loads(args.config.read_text(encoding="utf-8"))
            except json.JSONDecodeError as exc:
                raise UsageError(f"config file {args.config}: {exc.msg}") from None
            unknown = set(file_values) - set(DEFAULTS)
            if unknown:
                raise UsageError(f"config file {args.config}: unknown keys {sorted(unknown)}")
            merged.update(file_values)
        for key in DEFAULTS:
            flag_value = getattr(args, key, None)
            if flag_value is not None:
                merged[key] = flag_value
        self._values = merged
        self.args = args

    def __getattr__(self, key):
        try:
            return self._values[key]
        except KeyError:
            raise AttributeError(key) from None

    @property
    def ratio(self) -> tuple[int, int]:
        parts = str(self._values["split"]).split(":")
        try:
            train_parts, test_parts = (int(p) for p in parts)
        except ValueError:
            raise UsageError(f"--split must look like 3:1, got {self._values['split']!r}") from None
        if train_parts < 1 or test_parts < 1:
            raise UsageError("--split parts must be positive")
        return train_parts, test_parts

    @property
    def seed(self) -> int:
        seed = self.args.seed if self.args.seed is not None else self._values.get("seed")
        if seed is None:
            raise UsageError("--seed is required for any randomized step")
        return int(seed)

    def train_config(self, default_weighting: str = "none") -> classifier.TrainConfig:
        weighting = self._values["class_weighting"] or default_weighting
        return classifier.TrainConfig(
            regularization_strength=self._values["l2"],
            learning_rate=self._values["learning_rate"],
            epochs=self._values["epochs"],
            seed=self.seed,
            class_weighting=weighting,
        )

    def mining_config(self) -> MiningConfig:
        try:
            return MiningConfig(
                minsup=self._values["minsup"],
                minconf=self._values["minconf"],
                max_pattern_length=self._values["max_pattern_length"],
            )
        except MiningError as exc:
            # bad thresholds are a usage problem, caught before any data work
            raise UsageError(str(exc)) from None


def _require_file(path: Path | None, what: str) -> Path:
    if path is None:
        raise UsageError(f"--{what} is required")
    if not path.exists():
        raise CorpusError(f"missing {what} artifact: {path}")
    return path


def _require_dir(path: Path | None, what: str) -> Path:
    if path is None:
        raise UsageError(f"--{what} is required")
    if not path.is_dir():
        raise CorpusError(f"missing {what} directory: {path}")
    return path


def _out_dir(args) -> Path:
    if args.out is None:
        raise UsageError("--out is required")
    args.out.mkdir(parents=True, exist_ok=True)
    return args.out


def _write_json(path: Path, payload) -> None:
    path.write_text(
        json.dumps(payload, ensure_ascii=False, indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )


def _write_sidecar_log(out: Path, args) -> None:
    # non-deterministic details live here so primary outputs stay stable
    lines = [
        f"timestamp: {time.strftime('%Y-%m-%dT%H:%M:%S%z')}",
        f"argv: {' '.join(sys.argv)}",
        f"kernels: {_kernels.backend}",
        f"version: {__version__}",
    ]
    (out / "run.log").write_text("\n".join(lines) + "\n", encoding="utf-8")


def _load_resources(args, need_embeddings: bool = False):
    corpus_path = _require_file(args.corpus, "corpus")
    lexicon_dir = _require_dir(args.lexicons, "lexicons")
    docs = load_corpus(corpus_path)
    lex = load_lexicons(lexicon_dir)
    if args.relations is not None:
        _require_file(args.relations, "relations")
        lex = lex.with_relations(load_relations(args.relations))
    emb = None
    if need_embeddings:
        emb_path = _require_file(args.embeddings, "embeddings")
        emb = load_embeddings(emb_path)
    inventory_path = args.inventory
    if inventory_path is not None:
        _require_file(inventory_path, "inventory")
    return docs, lex, emb, inventory_path


def cmd_ingest_check(args) -> int:
    docs = load_corpus(_require_file(args.corpus, "corpus"))
    by_domain = {d: 0 for d in DOMAINS}
    amb = mis = 0
    for doc in docs:
        by_domain[doc.domain] += 1
        amb += doc.label_ambiguous is not None
        mis += doc.label_misleading is not None
    print(f"{len(docs)} documents")
    for domain in DOMAINS:
        if by_domain[domain]:
            print(f"  {domain}: {by_domain[domain]}")
    print(f"labeled ambiguous: {amb}, labeled misleading: {mis}")
    return EXIT_OK


def cmd_mine_csr(args) -> int:
    cfg = RunConfig(args)
    mining_cfg = cfg.mining_config()
    out = _out_dir(args)
    docs, lex, _, inventory_path = _load_resources(args)
    task = cfg.task
    labeled = docs_for_task(docs, task)
    if not labeled:
        raise CorpusError(f"corpus has no documents labeled for task {task!r}")
    if args.use_all:
        train_docs = labeled
    else:
        train_docs, _ = split_train_test(labeled, cfg.ratio, cfg.seed)
    inventory = pipeline.build_inventory(lex, inventory_path)
    db = build_sequence_database(train_docs, inventory, task)
    rules = mine(db, mining_cfg)
    rules_path = out / "rules.json"
    save_rules(rules, rules_path)
    _write_sidecar_log(out, args)
    print(f"mined {len(rules)} rules from {len(train_docs)} headlines -> {rules_path}")
    return EXIT_OK


def cmd_featurize(args) -> int:
    cfg = RunConfig(args)
    out = _out_dir(args)
    task = cfg.task
    docs, lex, emb, inventory_path = _load_resources(args, need_embeddings=task == "misleading")

    if task == "ambiguous":
        rules_path = _require_file(args.rules, "rules")
        rules = load_rules(rules_path)
        inventory = pipeline.build_inventory(lex, inventory_path)
        extract = pipeline.ambiguous_extractor(lex, inventory, rules)
        rows = [(doc.id, extract(doc)) for doc in docs if doc.headline]
        write_feature_matrix(out / "features_ambiguous.csv", rows)
        print(f"wrote {len(rows)} rows -> {out / 'features_ambiguous.csv'}")
    else:
        if args.idf is not None:
            idf = TfidfModel.load(_require_file(args.idf, "idf"))
        else:
            # standalone export: freeze idf over this corpus
            idf = pipeline.fit_idf(docs)
        head = pipeline.head_extractor(lex)
        head_rows, body_rows, all_rows, degraded_rows = [], [], [], []
        for doc in docs:
            if not doc.headline:
                continue
            hv = head(doc)
            bv, tags = misleading_body_features(doc, lex, emb, idf)
            head_rows.append((doc.id, hv))
            body_rows.append((doc.id, bv))
            all_rows.append((doc.id, concat_vectors("misleading-all", hv, bv)))
            if tags:
                degraded_rows.append({"id": doc.id, "degraded": list(tags)})
        write_feature_matrix(out / "features_misleading_head.csv", head_rows)
        write_feature_matrix(out / "features_misleading_body.csv", body_rows)
        write_feature_matrix(out / "features_misleading_all.csv", all_rows)
        with open(out / "degraded.jsonl", "w", encoding="utf-8") as handle:
            for row in degraded_rows:
                handle.write(json.dumps(row, sort_keys=True) + "\n")
        print(f"wrote {len(all_rows)} rows x 3 matrices -> {out}")
    _write_sidecar_log(out, args)
    return EXIT_OK


def _report_payload(report, extra: dict) -> dict:
    payload = report.to_dict()
    payload.update(extra)
    return payload


def cmd_train(args) -> int:
    cfg = RunConfig(args)
    out = _out_dir(args)
    task = cfg.task
    docs, lex, emb, inventory_path = _load_resources(args, need_embeddings=task == "misleading")
    labeled = docs_for_task(docs, task)
    if not labeled:
        raise CorpusError(f"corpus has no documents labeled for task {task!r}")
    stratify = (lambda d: d.label_for(task)) if cfg.stratify else None
    train_docs, test_docs = split_train_test(labeled, cfg.ratio, cfg.seed, stratify_by=stratify)
    if not train_docs or not test_docs:
        raise CorpusError(
            f"split produced an empty side (train={len(train_docs)}, test={len(test_docs)})"
        )

    if task == "ambiguous":
        mining_cfg = cfg.mining_config()
        inventory = pipeline.build_inventory(lex, inventory_path)
        db = build_sequence_database(train_docs, inventory, task)
        rules = mine(db, mining_cfg)
        save_rules(rules, out / "rules.json")
        extract = pipeline.ambiguous_extractor(lex, inventory, rules)
        tcfg = cfg.train_config(default_weighting="none")
    else:
        idf = pipeline.fit_idf(train_docs)
        idf.save(out / "idf.json")
        extract = pipeline.all_features_extractor(lex, emb, idf)
        tcfg = cfg.train_config(default_weighting="balanced")
        degraded_rows = []
        for doc in train_docs + test_docs:
            _, tags = misleading_body_features(doc, lex, emb, idf)
            if tags:
                degraded_rows.append({"id": doc.id, "degraded": list(tags)})
        with open(out / "degraded.jsonl", "w", encoding="utf-8") as handle:
            for row in degraded_rows:
                handle.write(json.dumps(row, sort_keys=True) + "\n")

    examples = [(extract(doc), bool(doc.label_for(task))) for doc in train_docs]
    model = classifier.train(examples, tcfg)
    classifier.save_model(model, out / "model.json")

    preds = [classifier.predict(model, extract(doc)) for doc in test_docs]
    gold = [bool(doc.label_for(task)) for doc in test_docs]
    report = precision_recall_f(preds, gold)
    _write_json(
        out / "report.json",
        _report_payload(report, {
            "task": task,
            "train_size": len(train_docs),
            "test_size": len(test_docs),
            "seed": cfg.seed,
        }),
    )
    _write_sidecar_log(out, args)
    print(f"task={task} P={report.precision:.3f} R={report.recall:.3f} F={report.f_score:.3f}")
    print(f"artifacts -> {out}")
    return EXIT_OK


def cmd_cotrain(args) -> int:
    cfg = RunConfig(args)
    if cfg.task != "misleading":
        raise UsageError("co-training requires the two-view misleading task (--task misleading)")
    out = _out_dir(args)
    docs, lex, emb, _ = _load_resources(args, need_embeddings=True)
    labeled = docs_for_task(docs, "misleading")
    if not labeled:
        raise CorpusError("corpus has no documents labeled for task 'misleading'")
    stratify = (lambda d: d.label_misleading) if cfg.stratify else None
    gold_train, test_docs = split_train_test(labeled, cfg.ratio, cfg.seed, stratify_by=stratify)
    pool = unlabeled_pool(docs, "misleading")

    idf = pipeline.fit_idf(gold_train)
    idf.save(out / "idf.json")
    head_view = pipeline.head_extractor(lex)
    body_view = pipeline.body_extractor(lex, emb, idf)
    tcfg = cfg.train_config(default_weighting="balanced")

    p = int(cfg.p)
    if cfg.n is not None:
        n = int(cfg.n)
    else:
        # keep the promoted class ratio aligned with the gold distribution
        n_pos = sum(1 for d in gold_train if d.label_misleading)
        n_neg = len(gold_train) - n_pos
        n = max(1, round(p * n_neg / n_pos)) if n_pos else 2 * p
    ct_cfg = cotrain_mod.CoTrainConfig(p=p, n=n, iterations=int(cfg.iterations))

    gold_pairs = [(d, bool(d.label_misleading)) for d in gold_train]
    model_h, model_b, state = cotrain_mod.co_train(
        gold_pairs, pool, head_view, body_view, ct_cfg, tcfg
    )
    classifier.save_model(model_h, out / "model_head.json")
    classifier.save_model(model_b, out / "model_body.json")
    cotrain_mod.write_run_report(state, out / "cotrain_runs.jsonl")

    preds = [
        cotrain_mod.combined_score(model_h, model_b, doc, head_view, body_view) >= 0.5
        for doc in test_docs
    ]
    gold = [bool(doc.label_misleading) for doc in test_docs]
    report = precision_recall_f(preds, gold)
    _write_json(
        out / "report.json",
        _report_payload(report, {
            "task": "misleading",
            "train_size": len(gold_train),
            "pool_size": len(pool),
            "test_size": len(test_docs),
            "p": ct_cfg.p,
            "n": ct_cfg.n,
            "iterations_run": state.iteration,
            "seed": cfg.seed,
        }),
    )

    if args.sweep:
        try:
            p_grid = [int(v) for v in str(args.sweep).split(",") if v.strip()]
        except ValueError:
            raise UsageError(f"--sweep must be comma-separated integers, got {args.sweep!r}") from None
        if args.checkpoints:
            try:
                checkpoints = [int(v) for v in str(args.checkpoints).split(",") if v.strip()]
            except ValueError:
                raise UsageError("--checkpoints must be comma-separated integers") from None
        else:
            step = max(1, int(cfg.iterations) // 10)
            checkpoints = list(range(0, int(cfg.iterations) + 1, step))
        rows = cotrain_mod.sweep(
            gold_pairs, pool, list(zip(test_docs, gold)), head_view, body_view,
            p_grid, checkpoints, tcfg,
        )
        with open(out / "sweep.csv", "w", encoding="utf-8") as handle:
            handle.write("p,n,iteration,precision,recall,f_score\n")
            for row in rows:
                handle.write(
                    f"{row['p']},{row['n']},{row['iteration']},"
                    f"{row['precision']!r},{row['recall']!r},{row['f_score']!r}\n"
                )
        print(f"sweep table ({len(rows)} rows) -> {out / 'sweep.csv'}")

    _write_sidecar_log(out, args)
    print(
        f"cotrain P={report.precision:.3f} R={report.recall:.3f} F={report.f_score:.3f} "
        f"({state.iteration} iterations, {len(state.excluded)} conflicts)"
    )
    return EXIT_OK


def _load_system(args, lex, emb, inventory_path, task, suffix=""):
    """A system is either one supervised model or a co-trained pair."""

    def get(name):
        return getattr(args, name + suffix, None)

    single, head, body = get("model"), get("model_head"), get("model_body")
    if single is not None and (head is not None or body is not None):
        raise UsageError("pass either --model or --model-head/--model-body, not both")
    if task == "ambiguous":
        if single is None:
            raise UsageError("the ambiguous task needs --model")
        rules = load_rules(_require_file(get("rules"), "rules"))
        inventory = pipeline.build_inventory(lex, inventory_path)
        extract = pipeline.ambiguous_extractor(lex, inventory, rules)
        model = classifier.load_model(_require_file(single, "model"))
        return lambda doc: classifier.predict(model, extract(doc))
    idf = TfidfModel.load(_require_file(get("idf"), "idf"))
    if single is not None:
        extract = pipeline.all_features_extractor(lex, emb, idf)
        model = classifier.load_model(_require_file(single, "model"))
        return lambda doc: classifier.predict(model, extract(doc))
    if head is None or body is None:
        raise UsageError("pass --model, or both --model-head and --model-body")
    model_h = classifier.load_model(_require_file(head, "model-head"))
    model_b = classifier.load_model(_require_file(body, "model-body"))
    return pipeline.combined_predictor(
        model_h, model_b, pipeline.head_extractor(lex), pipeline.body_extractor(lex, emb, idf)
    )


def cmd_evaluate(args) -> int:
    cfg = RunConfig(args)
    task = cfg.task
    docs, lex, emb, inventory_path = _load_resources(args, need_embeddings=task == "misleading")
    labeled = docs_for_task(docs, task)
    if not labeled:
        raise CorpusError(f"corpus has no documents labeled for task {task!r}")
    stratify = (lambda d: d.label_for(task)) if cfg.stratify else None
    _, test_docs = split_train_test(labeled, cfg.ratio, cfg.seed, stratify_by=stratify)
    gold = [bool(doc.label_for(task)) for doc in test_docs]

    system_a = _load_system(args, lex, emb, inventory_path, task)
    preds_a = [system_a(doc) for doc in test_docs]
    report = precision_recall_f(preds_a, gold)
    payload = _report_payload(report, {"task": task, "test_size": len(test_docs), "seed": cfg.seed})

    has_b = any(
        getattr(args, name) is not None
        for name in ("model_b", "model_b_head", "model_b_body")
    )
    if has_b:
        system_b = _load_system(args, lex, emb, inventory_path, task, suffix="_b")
        preds_b = [system_b(doc) for doc in test_docs]
        report_b = precision_recall_f(preds_b, gold)
        payload["system_b"] = report_b.to_dict()
        payload["sign_test_p"] = sign_test(preds_a, preds_b, gold)

    if args.out is not None:
        out = _out_dir(args)
        _write_json(out / "evaluation.json", payload)
        _write_sidecar_log(out, args)
    print(report.as_table())
    if has_b:
        print(f"{'sign_test_p':<20}{payload['sign_test_p']:.6g}")
    return EXIT_OK


def cmd_analyze(args) -> int:
    RunConfig(args)  # validates config file keys
    out = _out_dir(args)
    docs, lex, emb, inventory_path = _load_resources(args, need_embeddings=True)

    amb_rules = load_rules(_require_file(args.amb_rules, "amb-rules"))
    amb_model = classifier.load_model(_require_file(args.amb_model, "amb-model"))
    inventory = pipeline.build_inventory(lex, inventory_path)
    amb_extract = pipeline.ambiguous_extractor(lex, inventory, amb_rules)
    predict_amb = pipeline.supervised_predictor(amb_model, amb_extract)

    idf = TfidfModel.load(_require_file(args.idf, "idf"))
    if args.mis_model is not None:
        mis_model = classifier.load_model(_require_file(args.mis_model, "mis-model"))
        predict_mis = pipeline.supervised_predictor(
            mis_model, pipeline.all_features_extractor(lex, emb, idf)
        )
    else:
        if args.mis_model_head is None or args.mis_model_body is None:
            raise UsageError("pass --mis-model, or both --mis-model-head and --mis-model-body")
        model_h = classifier.load_model(_require_file(args.mis_model_head, "mis-model-head"))
        model_b = classifier.load_model(_require_file(args.mis_model_body, "mis-model-body"))
        predict_mis = pipeline.combined_predictor(
            model_h, model_b, pipeline.head_extractor(lex), pipeline.body_extractor(lex, emb, idf)
        )

    analyzable = [doc for doc in docs if doc.headline]
    breakdown = domain_breakdown(analyzable, predict_amb, predict_mis)
    save_breakdown(breakdown, out)
    _write_sidecar_log(out, args)
    for domain in sorted(breakdown):
        counts = breakdown[domain]
        print(
            f"{domain}: accurate={counts.accurate} ambiguous_only={counts.ambiguous_only} "
            f"misleading_only={counts.misleading_only} both={counts.both}"
        )
    print(f"breakdown files -> {out}")
    return EXIT_OK


_COMMANDS = {
    "ingest-check": cmd_ingest_check,
    "mine-csr": cmd_mine_csr,
    "featurize": cmd_featurize,
    "train": cmd_train,
    "cotrain": cmd_cotrain,
    "evaluate": cmd_evaluate,
    "analyze": cmd_analyze,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"headcheck: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as exc:
        print(f"headcheck: {exc}", file=sys.stderr)
        return EXIT_DATA
    except FileNotFoundError as exc:
        print(f"headcheck: missing file: {exc.filename}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
