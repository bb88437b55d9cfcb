"""Batch entry point wiring all modules into reproducible runs.

Exit codes: 0 ok, 1 hard invariant failure, 2 I/O or config error.  Every
forge/extract run writes a manifest (config hash, input digests) so identical
config + seed reruns are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from . import containers
from .config import ConfigError, RunConfig, write_manifest
from .embeddings import EmbeddingTable
from .errors import MaskRegionError
from .extractor import FeaturePyramid, extract_region_tokens, init_weights
from .forge import (
    ChatCompletionClient,
    build_balanced_yesno,
    build_object_prompt_jobs,
    build_part_prompt_jobs,
    ingest_llm_responses,
    mine_class_negative,
    mine_spatial_negative,
    validate_dataset,
)
from .forge.client import export_batch, ingest_batch, load_batch, persist_responses
from .forge.loaders import attach_captions, load_descriptions, load_instances, load_referring_captions
from .forge.types import PromptJob, read_jsonl, write_jsonl
from .forge.validate import write_report
from .forge.yesno import region_stats
from .errors import MissingCaptionError, NoNegativeAvailableError, UnknownAttributeError
from .masks import decode_rle
from .evalsuite import cider_scores, gpt_judge, recognition_metrics, semantic_iou, semantic_similarity, vocab_match
from .evalsuite.recognition import LabeledSegment
from .masks import RleMask


def _run_dir(cfg: RunConfig) -> str:
    base = cfg.get("output_dir", "out")
    path = os.path.join(base, f"run-{cfg.digest()[:12]}")
    os.makedirs(path, exist_ok=True)
    return path


def _load_regions(cfg: RunConfig):
    regions = load_instances(cfg.require_path("annotations"))
    refs_path = cfg.get("referring_captions")
    if refs_path:
        regions = attach_captions(regions, load_referring_captions(refs_path))
    return regions


def _sorted_records(records):
    return sorted(records, key=lambda r: (r.image_ref, r.first_region_id(), r.task))


def cmd_forge(cfg: RunConfig) -> int:
    regions_by_image = _load_regions(cfg)
    descriptions = (load_descriptions(cfg.require_path("descriptions"))
                    if cfg.get("descriptions") else {})
    kinds = [k for k in cfg.get("kinds", "description,conversation,short_form").split(",") if k]
    seed = cfg.get_int("seed", 0)
    workers = cfg.get_int("workers", 1)

    def jobs_for_image(item):
        image_ref, regions = item
        jobs = []
        captioned = [r for r in regions if r.captions]
        with_attrs = [r for r in regions if r.attributes]
        for kind in kinds:
            if captioned:
                jobs.append(build_object_prompt_jobs(
                    image_ref, descriptions.get(image_ref, ""), captioned, kind))
        if with_attrs:
            jobs.append(build_part_prompt_jobs(image_ref, with_attrs))
        return jobs

    with ThreadPoolExecutor(max_workers=max(workers, 1)) as pool:
        job_lists = list(pool.map(jobs_for_image, sorted(regions_by_image.items())))
    jobs = sorted((j for js in job_lists for j in js), key=lambda j: j.job_id)

    table = (EmbeddingTable.load(cfg.require_path("embeddings"))
             if cfg.get("embeddings") else None)
    records = []
    for image_ref, regions in sorted(regions_by_image.items()):
        records.extend(build_balanced_yesno(
            regions, cfg.get_int("template_seed", seed), table, image_ref))
    records = _sorted_records(records)

    out_dir = _run_dir(cfg)
    jobs_path = os.path.join(out_dir, "jobs.jsonl")
    records_path = os.path.join(out_dir, "records.jsonl")
    report_path = os.path.join(out_dir, "report.json")
    write_jsonl(jobs_path, [j.to_json() for j in jobs])
    write_jsonl(records_path, [r.to_json() for r in records])
    report = validate_dataset(records)
    write_report(report, report_path)
    inputs = [cfg.require_path("annotations")]
    for key in ("descriptions", "embeddings", "referring_captions"):
        if cfg.get(key):
            inputs.append(cfg.require_path(key))
    write_manifest(out_dir, cfg, "forge", inputs,
                   [jobs_path, records_path, report_path])
    print(f"forge: {len(jobs)} jobs, {len(records)} records -> {out_dir}")
    return 0 if report.ok else 1


def cmd_prompts_export(cfg: RunConfig) -> int:
    jobs = [PromptJob.from_json(obj) for obj in read_jsonl(cfg.require_path("jobs"))]
    out = cfg.require("out")
    export_batch(jobs, out)
    print(f"prompts export: {len(jobs)} jobs -> {out}")
    return 0


def cmd_prompts_ingest(cfg: RunConfig) -> int:
    jobs = load_batch(cfg.require_path("jobs"))
    regions_by_image = _load_regions(cfg)
    if cfg.get_bool("llm.offline", True):
        responses = ingest_batch(jobs, cfg.require_path("responses"))
    else:
        client = ChatCompletionClient(endpoint=cfg.require("llm.endpoint"),
                                      model=cfg.get("llm.model", ""),
                                      max_in_flight=cfg.get_int("workers", 4))
        responses = client.submit(jobs)
        persist_responses(responses, os.path.join(_run_dir(cfg), "responses.jsonl"))
    texts = {r.job_id: r.text for r in responses.values() if r.ok}
    answered = [j for j in jobs if j.job_id in texts]
    records, rejections = ingest_llm_responses(
        answered, texts, regions_by_image, seed=cfg.get_int("seed", 0))
    records = _sorted_records(records)
    out_dir = _run_dir(cfg)
    records_path = os.path.join(out_dir, "records.jsonl")
    write_jsonl(records_path, [r.to_json() for r in records])
    failed = [{"job_id": j, "reason": why} for j, why in sorted(rejections)]
    failed += [{"job_id": r.job_id, "reason": r.error}
               for r in responses.values() if not r.ok]
    write_jsonl(os.path.join(out_dir, "rejections.jsonl"), failed)
    print(f"prompts ingest: {len(records)} records, {len(failed)} rejected -> {out_dir}")
    return 0


def cmd_mine(cfg: RunConfig) -> int:
    regions_by_image = _load_regions(cfg)
    table = (EmbeddingTable.load(cfg.require_path("embeddings"))
             if cfg.get("embeddings") else None)
    seed = cfg.get_int("seed", 0)
    out_rows = []
    for image_ref, regions in sorted(regions_by_image.items()):
        stats = region_stats(regions)
        for i, region in enumerate(regions):
            row = {"image_ref": image_ref, "region_id": region.region_id,
                   "category": region.category}
            try:
                _, row["spatial_negative"] = mine_spatial_negative(i, stats)
            except NoNegativeAvailableError:
                row["spatial_negative"] = None
            if table is not None and region.category in table:
                row["class_negative"] = mine_class_negative(
                    region.category, table, seed + region.region_id)
            else:
                row["class_negative"] = None
            out_rows.append(row)
    out_dir = _run_dir(cfg)
    out_path = os.path.join(out_dir, "negatives.jsonl")
    write_jsonl(out_path, out_rows)
    print(f"mine: {len(out_rows)} regions -> {out_path}")
    return 0


def _pyramids_from_tensors(tensors):
    """Group "img{k}/level{j}" tensors into per-image 4-level pyramids."""
    groups = {}
    for name, arr in tensors.items():
        prefix, _, leaf = name.rpartition("/")
        if leaf.startswith("level"):
            groups.setdefault(prefix, {})[int(leaf[len("level"):])] = arr
    pyramids = {}
    for prefix, levels in sorted(groups.items()):
        ordered = [levels[j] for j in sorted(levels)]
        if len(ordered) != 4:
            raise MaskRegionError(f"{prefix}: expected 4 levels, got {len(ordered)}")
        pyramids[prefix] = FeaturePyramid(tuple(ordered))
    return pyramids


def cmd_extract(cfg: RunConfig) -> int:
    features_path = cfg.require_path("features")
    tensors = containers.read_tensors(features_path)
    pyramids = _pyramids_from_tensors(tensors)
    regions_by_image = _load_regions(cfg)
    first = next(iter(pyramids.values()))
    weights = init_weights(
        seed=cfg.get_int("seed", 0),
        channels=first.channels,
        hidden_dim=cfg.get_int("dim_hidden", 1024),
        out_dim=cfg.get_int("dim_out", 512),
        spatial_side=cfg.get_int("spatial_side", 224),
    )
    out_tensors = {}
    count = 0
    for image_ref, regions in sorted(regions_by_image.items()):
        key = f"img{image_ref}" if f"img{image_ref}" in pyramids else image_ref
        if key not in pyramids:
            raise ConfigError(f"no feature pyramid for image {image_ref!r}")
        pyramid = pyramids[key]
        for region in regions:
            mask = decode_rle(region.mask)
            tokens = extract_region_tokens(mask, pyramid, weights,
                                           binary=cfg.get_bool("binary_pool", False))
            out_tensors[f"{key}/region{region.region_id}/mask_token"] = tokens.mask_token
            out_tensors[f"{key}/region{region.region_id}/spatial_token"] = tokens.spatial_token
            count += 1
    out_dir = _run_dir(cfg)
    out_path = os.path.join(out_dir, "tokens.ospt")
    containers.write_tensors(out_path, out_tensors)
    write_manifest(out_dir, cfg, "extract",
                   [features_path, cfg.require_path("annotations")], [out_path])
    print(f"extract: {count} regions -> {out_path}")
    return 0


def _predictions_and_references(cfg: RunConfig):
    preds = read_jsonl(cfg.require_path("predictions"))
    refs = {(r["image_ref"], r.get("region_id")): r["text"]
            for r in read_jsonl(cfg.require_path("references"))}
    pairs = []
    for p in preds:
        key = (p["image_ref"], p.get("region_id"))
        if key in refs:
            pairs.append((p["text"], refs[key]))
    if not pairs:
        raise ConfigError("no prediction/reference pairs matched")
    return pairs


def cmd_eval(metric: str, cfg: RunConfig) -> int:
    report = {"metric": metric}
    if metric == "siou":
        pairs = _predictions_and_references(cfg)
        scores = [semantic_iou(p, r) for p, r in pairs]
        report.update(value=100.0 * sum(scores) / len(scores), sample_count=len(scores))
    elif metric == "ss":
        table = EmbeddingTable.load(cfg.require_path("embeddings"))
        pairs = _predictions_and_references(cfg)
        scores = [semantic_similarity(p, r, table) for p, r in pairs]
        report.update(value=100.0 * sum(scores) / len(scores), sample_count=len(scores))
    elif metric == "vocab":
        table = EmbeddingTable.load(cfg.require_path("embeddings"))
        with open(cfg.require_path("vocab"), "r", encoding="utf-8") as fh:
            vocab = [line.strip() for line in fh if line.strip()]
        preds = read_jsonl(cfg.require_path("predictions"))
        matched = [
            {"image_ref": p["image_ref"], "region_id": p.get("region_id"),
             "match": vocab_match(p["text"], vocab, table)}
            for p in preds
        ]
        out_path = os.path.join(_run_dir(cfg), "vocab_matches.jsonl")
        write_jsonl(out_path, matched)
        report.update(value=float(len(matched)), sample_count=len(matched),
                      matches=out_path)
    elif metric == "cider":
        cands = {r["image_ref"]: r["text"]
                 for r in read_jsonl(cfg.require_path("predictions"))}
        refs = {r["image_ref"]: r["texts"]
                for r in read_jsonl(cfg.require_path("references"))}
        scores = cider_scores(cands, refs)
        report.update(value=100.0 * sum(scores.values()) / len(scores),
                      sample_count=len(scores), per_image=scores)
    elif metric == "recognition":
        segs = {}
        for row in read_jsonl(cfg.require_path("segments")):
            rle = RleMask(row["rle"]["size"][0], row["rle"]["size"][1],
                          tuple(row["rle"]["counts"]))
            segs.setdefault(row["image_ref"], []).append(
                LabeledSegment(rle, row["gt"], row["pred"]))
        result = recognition_metrics(segs)
        report.update(value=result["pq"], pq=result["pq"], miou=result["miou"],
                      sample_count=sum(len(v) for v in segs.values()),
                      per_class={"pq": result["pq_per_class"],
                                 "iou": result["iou_per_class"]})
    elif metric == "judge":
        preds = [r["text"] for r in read_jsonl(cfg.require_path("predictions"))]
        refs = [r["text"] for r in read_jsonl(cfg.require_path("references"))]
        client = ChatCompletionClient(endpoint=cfg.require("llm.endpoint"),
                                      model=cfg.get("llm.model", ""))
        result = gpt_judge(preds, refs, client)
        report.update(value=result.percentage, sample_count=len(preds),
                      skipped=result.skipped)
    else:
        raise ConfigError(f"unknown eval metric {metric!r}")
    out_dir = _run_dir(cfg)
    out_path = os.path.join(out_dir, f"eval_{metric}.json")
    with open(out_path, "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"eval {metric}: value={report['value']:.4f} -> {out_path}")
    return 0


def cmd_validate(cfg: RunConfig) -> int:
    rows = read_jsonl(cfg.require_path("records"))
    report = validate_dataset(rows)
    out_path = os.path.join(_run_dir(cfg), "validate.json")
    write_report(report, out_path)
    print(f"validate: {report.total_records} records, ok={report.ok} -> {out_path}")
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="maskregion")
    parser.add_argument("--config", help="key=value config file")
    parser.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                        help="config override (repeatable)")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("forge")
    prompts = sub.add_parser("prompts")
    prompts.add_argument("action", choices=["export", "ingest"])
    sub.add_parser("mine")
    sub.add_parser("extract")
    evalp = sub.add_parser("eval")
    evalp.add_argument("metric",
                       choices=["siou", "ss", "vocab", "cider", "recognition", "judge"])
    sub.add_parser("validate")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig.load(args.config, args.set)
        if args.command == "forge":
            return cmd_forge(cfg)
        if args.command == "prompts":
            return (cmd_prompts_export if args.action == "export"
                    else cmd_prompts_ingest)(cfg)
        if args.command == "mine":
            return cmd_mine(cfg)
        if args.command == "extract":
            return cmd_extract(cfg)
        if args.command == "eval":
            return cmd_eval(args.metric, cfg)
        if args.command == "validate":
            return cmd_validate(cfg)
        raise ConfigError(f"unknown command {args.command!r}")
    except (ConfigError, OSError, json.JSONDecodeError) as exc:
        print(json.dumps({"error": "config_or_io", "message": str(exc)}),
              file=sys.stderr)
        return 2
    except (MissingCaptionError, UnknownAttributeError, MaskRegionError) as exc:
        print(json.dumps({"error": "invariant", "message": str(exc)}),
              file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
