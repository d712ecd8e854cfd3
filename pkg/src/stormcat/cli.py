"""Batch command-line front end.

Subcommands: ``label`` (filter + severity-label a corpus), ``cv``
(stratified cross-validation, optionally sweeping all algorithm/feature
combinations), ``predict`` (majority-vote category for one place),
``geolabel`` (build a place-category table from a hurricane track), and
``strip-terms`` (remove area-specific words from a dataset). Every output
file embeds the resolved configuration and seed, and repeated runs with the
same inputs produce byte-identical files.
"""

from __future__ import annotations

import argparse
import csv
import inspect
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path

from . import __version__
from .classifiers import ALGORITHMS, make_classifier, model_from_dict, model_to_dict
from .config import (
    DomainError,
    EventSpec,
    FEATURE_METHODS,
    RunConfig,
    UsageError,
    load_config_file,
    parse_param,
    require_file,
)
from .corpus import (
    FilterSpec,
    LabeledTweet,
    Tweet,
    filter_tweets,
    label_tweets,
    load_corpus,
    load_labeled_dataset,
    load_place_table,
    tweet_to_record,
    write_labeled_dataset,
    write_place_table,
)
from .evaluation import FoldEvaluationError, cross_validate
from .features import BowVectorizer, EmbeddingVectorizer, load_embeddings
from .geolabel import CATEGORY_RULES, build_place_table, load_places, load_track
from .labels import LABEL_12, LABEL_34, LABELS
from .locpredict import predict_location
from .text import Vocabulary, load_blocklist, strip_area_terms, tokenize

logger = logging.getLogger(__name__)

SWEEP_ALGORITHMS = sorted(ALGORITHMS)
FEATURE_PARAM_NAMES = frozenset({"min_freq"})


# ---------------------------------------------------------------------------
# provenance and file helpers

def _provenance(command: str, config: RunConfig) -> dict:
    return {
        "tool": "stormcat",
        "version": __version__,
        "command": command,
        "config": config.resolved(),
    }


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n", encoding="utf-8")


def _write_csv(path: Path, header: list[str], rows: list[list], provenance: dict) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("# provenance: " + json.dumps(provenance, sort_keys=True) + "\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def _out_dir(config: RunConfig) -> Path:
    out = Path(config.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


# ---------------------------------------------------------------------------
# argument parsing

def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="INI config file; flags override its values")
    parser.add_argument("--seed", type=int, help="master random seed")
    parser.add_argument("--out", help="output directory")
    parser.add_argument("--embeddings", help="embedding table in the text format")
    parser.add_argument("--blocklist", help="area-term blocklist file")
    parser.add_argument("--sweep", action="store_true", default=None,
                        help="cv: run all algorithms x feature methods")
    parser.add_argument("--min-tweets", type=int, dest="min_tweets",
                        help="warn when predicting a place from fewer tweets")
    parser.add_argument("--leaky-vocab", action="store_true", default=None, dest="leaky_vocab",
                        help="cv: build the vocabulary from the whole corpus (leaky baseline)")
    parser.add_argument("--category-rule", choices=CATEGORY_RULES, dest="category_rule",
                        help="how a place reads its category off the track")
    parser.add_argument("--radius-km", type=float, dest="radius_km",
                        help="track proximity radius in km")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stormcat",
        description="Hurricane-severity tweet labeling, classification, and location prediction",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_label = sub.add_parser("label", help="filter the corpus and attach severity labels")
    _add_common_flags(p_label)
    p_label.add_argument("--corpus", help="tweet corpus file")
    p_label.add_argument("--format", choices=("jsonl", "csv"), help="corpus file format")
    p_label.add_argument("--lang", help="language code filter")
    p_label.add_argument("--country", help="country code filter")
    p_label.add_argument("--event", help="ad-hoc event name (with --hashtag and a ground-truth source)")
    p_label.add_argument("--hashtag", action="append", default=None, help="ad-hoc event hashtag (repeatable)")
    p_label.add_argument("--place-table", dest="place_table", help="ad-hoc event place,category table")
    p_label.add_argument("--track", help="ad-hoc event track file")
    p_label.add_argument("--towns", help="ad-hoc event towns file (name,lat,lon)")

    p_cv = sub.add_parser("cv", help="stratified k-fold cross-validation")
    _add_common_flags(p_cv)
    p_cv.add_argument("--data", help="labeled dataset (output of 'label')")
    p_cv.add_argument("--algorithm", choices=sorted(ALGORITHMS), help="classifier to evaluate")
    p_cv.add_argument("--features", choices=FEATURE_METHODS, help="feature method")
    p_cv.add_argument("--k", type=int, help="fold count")
    p_cv.add_argument("--param", action="append", default=None,
                      help="hyperparameter override NAME=VALUE (repeatable)")

    p_pred = sub.add_parser("predict", help="majority-vote category for one place")
    _add_common_flags(p_pred)
    p_pred.add_argument("--corpus", help="tweet corpus file")
    p_pred.add_argument("--format", choices=("jsonl", "csv"), help="corpus file format")
    p_pred.add_argument("--lang", help="language code filter")
    p_pred.add_argument("--country", help="country code filter")
    p_pred.add_argument("--place", help="place name to predict")
    p_pred.add_argument("--truth", choices=LABELS, help="true label, to report the correct fraction")
    p_pred.add_argument("--data", help="labeled training dataset")
    p_pred.add_argument("--model", help="previously saved model bundle")
    p_pred.add_argument("--save-model", dest="save_model", help="write the trained model bundle here")
    p_pred.add_argument("--event", help="config event whose hashtags filter the corpus")
    p_pred.add_argument("--hashtag", action="append", default=None, help="hashtag filter (repeatable)")
    p_pred.add_argument("--algorithm", choices=sorted(ALGORITHMS), help="classifier to train")
    p_pred.add_argument("--features", choices=FEATURE_METHODS, help="feature method")
    p_pred.add_argument("--param", action="append", default=None,
                        help="hyperparameter override NAME=VALUE (repeatable)")

    p_geo = sub.add_parser("geolabel", help="assign categories to towns from a track")
    _add_common_flags(p_geo)
    p_geo.add_argument("--track", help="track file (time,lat,lon,category)")
    p_geo.add_argument("--towns", help="towns file (name,lat,lon)")

    p_strip = sub.add_parser("strip-terms", help="remove blocklisted area terms from a dataset")
    _add_common_flags(p_strip)
    p_strip.add_argument("--data", help="labeled dataset to rewrite")

    return parser


def _merge_args(args: argparse.Namespace) -> RunConfig:
    config = load_config_file(args.config) if args.config else RunConfig()
    overrides = {
        "seed": args.seed,
        "out": args.out,
        "sweep": getattr(args, "sweep", None),
        "embeddings": args.embeddings,
        "blocklist": args.blocklist,
        "min_tweets": args.min_tweets,
        "leaky_vocab": args.leaky_vocab,
        "category_rule": args.category_rule,
        "radius_km": args.radius_km,
        "corpus": getattr(args, "corpus", None),
        "format": getattr(args, "format", None),
        "lang": getattr(args, "lang", None),
        "country": getattr(args, "country", None),
        "data": getattr(args, "data", None),
        "model": getattr(args, "model", None),
        "algorithm": getattr(args, "algorithm", None),
        "features": getattr(args, "features", None),
        "k": getattr(args, "k", None),
    }
    for key, value in overrides.items():
        if value is not None:
            setattr(config, key, value)
    for chunk in getattr(args, "param", None) or []:
        name, value = parse_param(chunk)
        config.params[name] = value
    ad_hoc_source = getattr(args, "place_table", None) or getattr(args, "track", None)
    if getattr(args, "hashtag", None) or ad_hoc_source:
        config.events = [
            EventSpec(
                name=getattr(args, "event", None) or "event",
                hashtags=tuple(t.lower().lstrip("#") for t in (args.hashtag or [])),
                place_table=getattr(args, "place_table", None),
                track=getattr(args, "track", None),
                towns=getattr(args, "towns", None),
            )
        ]
    config.validate()
    return config


# ---------------------------------------------------------------------------
# label

def _event_place_table(event: EventSpec, config: RunConfig) -> dict[str, int]:
    if event.place_table is not None:
        return load_place_table(require_file(event.place_table, f"place table for {event.name}"))
    track = load_track(require_file(event.track, f"track for {event.name}"))
    towns = load_places(require_file(event.towns, f"towns for {event.name}"))
    return build_place_table(towns, track, radius_km=config.radius_km, rule=config.category_rule)


def _load_corpus_checked(config: RunConfig) -> list[Tweet]:
    path = require_file(config.corpus, "corpus")
    tweets, errors = load_corpus(path, format=config.format)
    if errors:
        logger.warning("%d malformed corpus record(s) skipped; first: line %d: %s",
                       len(errors), errors[0].line, errors[0].reason)
    return tweets


def cmd_label(config: RunConfig) -> int:
    if not config.events:
        raise UsageError("no events configured: add [event NAME] sections or --hashtag/--place-table flags")
    corpus = _load_corpus_checked(config)
    provenance = _provenance("label", config)
    out = _out_dir(config)

    all_labeled: list[LabeledTweet] = []
    place_rows: list[list] = []
    summary_rows: list[list] = []
    membership: dict[str, int] = {}
    for event in config.events:
        table = _event_place_table(event, config)
        if not table:
            raise DomainError(f"event {event.name!r}: place table is empty")
        stage1 = filter_tweets(
            corpus, FilterSpec(place_names=frozenset(table), hashtags=frozenset(event.hashtags))
        )
        canonical = {place.casefold(): place for place in table}
        per_place: dict[str, int] = {place: 0 for place in table}
        for tweet in stage1:
            per_place[canonical[tweet.place_name.casefold()]] += 1
        for place in sorted(table):
            place_rows.append([event.name, place, table[place], per_place[place]])
        stage2 = filter_tweets(
            stage1, FilterSpec(lang=config.lang, country_code=config.country)
        )
        labeled, skipped = label_tweets(stage2, table, event.name)
        if skipped:
            logger.warning("event %s: %d tweet(s) skipped at labeling", event.name, skipped)
        counts = {lbl: sum(1 for lt in labeled if lt.label == lbl) for lbl in LABELS}
        summary_rows.append([event.name, counts[LABEL_12], counts[LABEL_34]])
        for lt in labeled:
            membership[lt.tweet.id] = membership.get(lt.tweet.id, 0) + 1
        all_labeled.extend(labeled)

    shared = sum(1 for count in membership.values() if count > 1)
    if shared:
        logger.warning("%d tweet(s) appear in more than one event's dataset", shared)
    if not all_labeled:
        raise DomainError("0 tweets after filtering")

    write_labeled_dataset(all_labeled, out / "labeled.jsonl", provenance=provenance)
    _write_csv(out / "label_summary.csv", ["event", "label_12", "label_34"], summary_rows, provenance)
    _write_csv(out / "place_counts.csv", ["event", "place", "category", "n_tweets"],
               place_rows, provenance)
    for event_name, n12, n34 in summary_rows:
        print(f"{event_name}: {n12} tweets labeled {LABEL_12}, {n34} labeled {LABEL_34}")
    print(f"wrote {len(all_labeled)} labeled tweets to {out / 'labeled.jsonl'}")
    return 0


# ---------------------------------------------------------------------------
# shared classification plumbing

def _prepare_docs(dataset: list[LabeledTweet], blocklist: frozenset[str] | None):
    docs = [tokenize(lt.tweet.text) for lt in dataset]
    if blocklist:
        docs = [strip_area_terms(doc, blocklist) for doc in docs]
    labels = [lt.label for lt in dataset]
    ids = [lt.tweet.id for lt in dataset]
    return docs, labels, ids


def _build_vectorizer(config: RunConfig, features: str):
    if features == "bow":
        min_freq = config.params.get("min_freq", 1)
        return BowVectorizer(min_freq=int(min_freq))
    table = load_embeddings(require_file(config.embeddings, "embeddings"))
    return EmbeddingVectorizer(table)


def _build_classifier(config: RunConfig, algorithm: str, features: str):
    defaults: dict = {}
    if algorithm == "naive_bayes":
        defaults["variant"] = "multinomial" if features == "bow" else "gaussian"
    cls = ALGORITHMS[algorithm]
    accepted = inspect.signature(cls.__init__).parameters
    if "seed" in accepted:
        defaults["seed"] = config.seed
    overrides = {
        name: value
        for name, value in config.params.items()
        if name in accepted and name not in FEATURE_PARAM_NAMES
    }
    return make_classifier(algorithm, **{**defaults, **overrides})


def _load_blocklist_checked(config: RunConfig) -> frozenset[str] | None:
    if config.blocklist is None:
        return None
    return load_blocklist(require_file(config.blocklist, "blocklist"))


# ---------------------------------------------------------------------------
# cv

def cmd_cv(config: RunConfig) -> int:
    dataset = load_labeled_dataset(require_file(config.data, "labeled dataset"))
    if not dataset:
        raise DomainError("labeled dataset is empty")
    blocklist = _load_blocklist_checked(config)
    docs, labels, ids = _prepare_docs(dataset, blocklist)
    provenance = _provenance("cv", config)
    out = _out_dir(config)

    combos = (
        [(algorithm, features) for features in FEATURE_METHODS for algorithm in SWEEP_ALGORITHMS]
        if config.sweep
        else [(config.algorithm, config.features)]
    )
    reports = []
    for algorithm, features in combos:
        vectorizer = _build_vectorizer(config, features)
        classifier = _build_classifier(config, algorithm, features)
        try:
            report = cross_validate(
                docs,
                labels,
                classifier,
                vectorizer=vectorizer,
                k=config.k,
                seed=config.seed,
                ids=ids,
                leaky_vocab=config.leaky_vocab,
                algorithm_name=algorithm,
                features_name=features,
                notes=("vocabulary built from training folds only",)
                if not config.leaky_vocab
                else ("vocabulary built from the whole dataset (leaky)",),
            )
        except (ValueError, FoldEvaluationError) as exc:
            raise DomainError(f"{algorithm}+{features}: {exc}") from exc
        reports.append(report)
        print(f"{algorithm} {features}: weighted_f1={report.weighted_f1:.4f} "
              f"macro_f1={report.macro_f1:.4f} positive_f1={report.positive_f1:.4f}")

    _write_json(out / "cv_report.json",
                {"provenance": provenance, "reports": [r.to_dict() for r in reports]})
    rows = [
        [row["fold"], row["algorithm"], row["features"],
         repr(row["precision"]), repr(row["recall"]), repr(row["f1"])]
        for report in reports
        for row in report.table_rows()
    ]
    _write_csv(out / "cv_table.csv", ["fold", "algorithm", "features", "precision", "recall", "f1"],
               rows, provenance)
    print(f"wrote {len(reports)} report(s) to {out / 'cv_report.json'}")
    return 0


# ---------------------------------------------------------------------------
# predict

def _feature_state(vectorizer, config: RunConfig, blocklist: frozenset[str] | None) -> dict:
    if isinstance(vectorizer, BowVectorizer):
        state = {
            "method": "bow",
            "vocabulary": {
                "index": vectorizer.vocabulary_.index,
                "counts": vectorizer.vocabulary_.counts,
            },
        }
    else:
        state = {
            "method": "embeddings",
            "dim": vectorizer.table.dim,
            "source": Path(config.embeddings).name if config.embeddings else None,
        }
    state["blocklist"] = sorted(blocklist) if blocklist else []
    return state


def _restore_vectorizer(state: dict, config: RunConfig):
    if state["method"] == "bow":
        vectorizer = BowVectorizer()
        index = {str(t): int(i) for t, i in state["vocabulary"]["index"].items()}
        counts = {str(t): int(c) for t, c in state["vocabulary"]["counts"].items()}
        vectorizer.vocabulary_ = Vocabulary(index=index, counts=counts)
        return vectorizer
    table = load_embeddings(require_file(config.embeddings, "embeddings"))
    if table.dim != state["dim"]:
        raise UsageError(
            f"embedding dimension mismatch: model was trained with dim={state['dim']}, "
            f"table has dim={table.dim}"
        )
    return EmbeddingVectorizer(table)


def cmd_predict(config: RunConfig, args: argparse.Namespace) -> int:
    place = getattr(args, "place", None)
    if not place:
        raise UsageError("predict needs --place")
    corpus = _load_corpus_checked(config)
    provenance = _provenance("predict", config)
    out = _out_dir(config)

    hashtags: tuple[str, ...] = ()
    if getattr(args, "hashtag", None):
        hashtags = tuple(t.lower().lstrip("#") for t in args.hashtag)
    elif getattr(args, "event", None):
        matches = [e for e in config.events if e.name == args.event]
        if not matches:
            raise UsageError(f"event {args.event!r} not found in config")
        hashtags = matches[0].hashtags

    place_tweets = filter_tweets(
        corpus,
        FilterSpec(
            place_names=frozenset({place}),
            hashtags=frozenset(hashtags),
            lang=config.lang,
            country_code=config.country,
        ),
    )
    if not place_tweets:
        raise DomainError(f"0 tweets for place {place!r}")

    blocklist = _load_blocklist_checked(config)
    if config.model:
        bundle = json.loads(Path(require_file(config.model, "model")).read_text(encoding="utf-8"))
        model = model_from_dict(bundle["model"])
        stored = bundle["features"].get("blocklist") or []
        if stored:
            blocklist = frozenset(stored)
        vectorizer = _restore_vectorizer(bundle["features"], config)
        algorithm = bundle["model"]["kind"]
        features = bundle["features"]["method"]
    else:
        dataset = load_labeled_dataset(require_file(config.data, "labeled dataset"))
        if not dataset:
            raise DomainError("labeled dataset is empty")
        docs, labels, _ = _prepare_docs(dataset, blocklist)
        vectorizer = _build_vectorizer(config, config.features)
        model = _build_classifier(config, config.algorithm, config.features)
        X = vectorizer.fit(docs).transform(docs)
        model.fit(X, labels)
        algorithm, features = config.algorithm, config.features
        if getattr(args, "save_model", None):
            bundle = {
                "format_version": 1,
                "model": model_to_dict(model),
                "features": _feature_state(vectorizer, config, blocklist),
            }
            Path(args.save_model).write_text(
                json.dumps(bundle, sort_keys=True, indent=2) + "\n", encoding="utf-8"
            )

    prediction = predict_location(
        model,
        place_tweets,
        vectorizer,
        place=place,
        blocklist=blocklist,
        truth=getattr(args, "truth", None),
        min_tweets=config.min_tweets,
    )
    record = prediction.to_dict()
    record["truth"] = getattr(args, "truth", None)
    record["model"] = {"algorithm": algorithm, "features": features}
    _write_json(out / "prediction.json", {"provenance": provenance, "prediction": record})
    print(f"{place}: predicted {prediction.predicted} from {prediction.n_tweets} tweets "
          f"(tally {prediction.tally})")
    if prediction.correct_fraction is not None:
        print(f"correct fraction vs truth: {prediction.correct_fraction:.3f}")
    for warning in prediction.warnings:
        print(f"warning: {warning}")
    return 0


# ---------------------------------------------------------------------------
# geolabel and strip-terms

def cmd_geolabel(config: RunConfig, args: argparse.Namespace) -> int:
    track = load_track(require_file(getattr(args, "track", None), "track"))
    towns = load_places(require_file(getattr(args, "towns", None), "towns"))
    table = build_place_table(towns, track, radius_km=config.radius_km, rule=config.category_rule)
    if not table:
        raise DomainError("no town lies within the radius of any track point")
    out = _out_dir(config)
    provenance = _provenance("geolabel", config)
    write_place_table(
        table,
        out / "place_table.csv",
        header_lines=[
            "provenance: " + json.dumps(provenance, sort_keys=True),
            f"categories read from the track by the {config.category_rule!r} rule, "
            f"an approximation of map-derived assignments (radius {config.radius_km} km)",
        ],
    )
    for place in sorted(table):
        print(f"{place}: category {table[place]}")
    print(f"wrote {len(table)} place(s) to {out / 'place_table.csv'}")
    return 0


def cmd_strip_terms(config: RunConfig) -> int:
    dataset = load_labeled_dataset(require_file(config.data, "labeled dataset"))
    blocklist = _load_blocklist_checked(config)
    if blocklist is None:
        raise UsageError("strip-terms needs --blocklist")
    out = _out_dir(config)
    provenance = _provenance("strip-terms", config)
    kept: list[LabeledTweet] = []
    dropped = 0
    for lt in dataset:
        tokens = strip_area_terms(tokenize(lt.tweet.text), blocklist)
        if not tokens:
            dropped += 1
            continue
        kept.append(replace(lt, tweet=replace(lt.tweet, text=" ".join(tokens))))
    if not kept:
        raise DomainError("every record was emptied by the blocklist")
    write_labeled_dataset(kept, out / "stripped.jsonl", provenance=provenance)
    print(f"wrote {len(kept)} record(s) to {out / 'stripped.jsonl'} ({dropped} emptied and dropped)")
    return 0


# ---------------------------------------------------------------------------

def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _merge_args(args)
        if args.command == "label":
            return cmd_label(config)
        if args.command == "cv":
            return cmd_cv(config)
        if args.command == "predict":
            return cmd_predict(config, args)
        if args.command == "geolabel":
            return cmd_geolabel(config, args)
        if args.command == "strip-terms":
            return cmd_strip_terms(config)
        raise UsageError(f"unknown command {args.command!r}")
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
