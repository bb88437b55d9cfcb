"""Batch export entry point."""

import argparse
import logging
import sys

from .containers import ExportError
from .embeddings import export_embeddings
from .features import DEFAULT_CHANNELS, DEFAULT_SIDE, export_features


def build_parser():
    parser = argparse.ArgumentParser(prog="ospexport")
    parser.add_argument("--images", nargs="*", default=[],
                        help="image files to export as a feature pyramid OSPT")
    parser.add_argument("--labels",
                        help="text file of labels (one per line) to export as OSPE")
    parser.add_argument("--out", required=True, help="output container path")
    parser.add_argument("--side", type=int, default=DEFAULT_SIDE,
                        help="square input size for images")
    parser.add_argument("--model-id", default="synthetic",
                        help="backbone identifier; 'synthetic' needs no downloads")
    parser.add_argument("--channels", default=",".join(map(str, DEFAULT_CHANNELS)),
                        help="per-level channel widths for the synthetic backbone")
    parser.add_argument("--dim", type=int, default=384,
                        help="embedding dimension for the synthetic backend")
    parser.add_argument("--seed", type=int, default=0)
    return parser


def main(argv=None):
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    args = build_parser().parse_args(argv)
    if bool(args.images) == bool(args.labels):
        print("exactly one of --images or --labels is required", file=sys.stderr)
        return 2
    try:
        if args.images:
            channels = tuple(int(c) for c in args.channels.split(","))
            exported = export_features(args.images, args.out, side=args.side,
                                       model_id=args.model_id,
                                       channels=channels, seed=args.seed)
            print(f"exported {len(exported)} images -> {args.out}")
        else:
            labels = export_embeddings(args.labels, args.out,
                                       model_id=args.model_id, dim=args.dim)
            print(f"exported {len(labels)} labels -> {args.out}")
    except ExportError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
