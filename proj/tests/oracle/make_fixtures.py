#!/usr/bin/env python3
"""Generates the committed test fixtures and their expected values.

Everything here is computed with straightforward numpy code that shares
nothing with the C++ implementation: masks are plain boolean arrays, the
boundary F-measure uses an exhaustive pairwise distance check, and the
statistics are counted directly from the generator's own records.

Outputs (under tests/fixtures/):
  manifest.json          5-video synthetic manifest
  predictions/           20 prediction files (mixed directory layouts)
  golden_report.json     per-expression metrics and aggregates
  expected_stats.json    dataset statistics
  broken.json            manifest with planted schema violations
  broken_expected.json   JSON pointers of the planted violations
  criteria.json          manifest whose videos each break one selection rule
"""

import json
import math
import os
import re
import shutil
from pathlib import Path

import numpy as np

ROOT = Path(__file__).resolve().parents[1] / "fixtures"
RNG = np.random.default_rng(20250517)
KEYWORDS = ["then", "finally", "ultimately", "after", "before", "later"]
BOUNDARY_TH = 0.008


# ---- masks ---------------------------------------------------------------

def rle_encode(mask):
    flat = mask.flatten(order="F").astype(np.uint8)
    counts, current, run = [], 0, 0
    for v in flat:
        if v != current:
            counts.append(run)
            run, current = 0, v
        run += 1
    counts.append(run)
    return {"size": [int(mask.shape[0]), int(mask.shape[1])], "counts": [int(c) for c in counts]}


def rle_decode(rle):
    h, w = rle["size"]
    flat = np.zeros(h * w, dtype=bool)
    pos = 0
    for i, c in enumerate(rle["counts"]):
        if i % 2 == 1:
            flat[pos:pos + c] = True
        pos += c
    return flat.reshape((h, w), order="F")


def iou(a, b):
    union = np.logical_or(a, b).sum()
    if union == 0:
        return 1.0
    return float(np.logical_and(a, b).sum()) / float(union)


def boundary(mask):
    padded = np.pad(mask, 1, constant_values=False)
    interior = (padded[1:-1, 1:-1] & padded[:-2, 1:-1] & padded[2:, 1:-1]
                & padded[1:-1, :-2] & padded[1:-1, 2:])
    return mask & ~interior


def contour_f(pred, gt, tol):
    pb = np.argwhere(boundary(pred))
    gb = np.argwhere(boundary(gt))
    if len(pb) == 0 and len(gb) == 0:
        return 1.0
    if len(pb) == 0 or len(gb) == 0:
        return 0.0
    # Chebyshev distance between every pair of boundary pixels.
    d = np.max(np.abs(pb[:, None, :] - gb[None, :, :]), axis=2)
    precision = float(np.sum(d.min(axis=1) <= tol)) / len(pb)
    recall = float(np.sum(d.min(axis=0) <= tol)) / len(gb)
    if precision + recall == 0:
        return 0.0
    return 2 * precision * recall / (precision + recall)


def tolerance_px(h, w):
    return int(math.ceil(BOUNDARY_TH * math.sqrt(h * h + w * w)))


def evaluate(pred_frames, gt_frames, h, w):
    """pred/gt: lists of boolean arrays (all frames, empty where absent)."""
    tol = tolerance_px(h, w)
    js, fs = [], []
    t_pred = {t for t, m in enumerate(pred_frames) if m.any()}
    t_gt = {t for t, m in enumerate(gt_frames) if m.any()}
    t_i, t_u = t_pred & t_gt, t_pred | t_gt
    for p, g in zip(pred_frames, gt_frames):
        js.append(iou(p, g))
        fs.append(contour_f(p, g, tol))
    j = math.fsum(js) / len(js)
    f = math.fsum(fs) / len(fs)
    if not t_u:
        tiou = viou = 1.0
    else:
        tiou = len(t_i) / len(t_u)
        viou = math.fsum(iou(pred_frames[t], gt_frames[t]) for t in sorted(t_i)) / len(t_u)
    return {"J": j, "F": f, "JF": (j + f) / 2, "tIoU": tiou, "vIoU": viou}


# ---- text buckets ---------------------------------------------------------

def length_label(text):
    n = len(text.split())
    if n < 10:
        return "<10"
    if n <= 20:
        return "[10, 20]"
    return ">20"


def event_label(text):
    words = re.findall(r"[A-Za-z0-9\x80-￿]+", text)
    hits = sum(1 for word in words if word.lower() in KEYWORDS)
    return ["Single-event", "Two-event", "Multi-event"][min(hits, 2)]


def occlusion_label(rate):
    if rate <= 0.25:
        return "[0, 0.25]"
    if rate < 0.5:
        return "[0.25, 0.5)"
    if rate < 0.75:
        return "[0.5, 0.75)"
    return "[0.75, 1]"


# ---- synthetic dataset ------------------------------------------------------

def moving_box_track(h, w, frames, present):
    bh, bw = int(RNG.integers(4, h // 2)), int(RNG.integers(4, w // 2))
    y0, x0 = int(RNG.integers(0, h - bh)), int(RNG.integers(0, w - bw))
    dy, dx = int(RNG.integers(-1, 2)), int(RNG.integers(-1, 2))
    masks, boxes = [], {}
    for t in range(frames):
        m = np.zeros((h, w), dtype=bool)
        if t in present:
            y = int(np.clip(y0 + dy * (t // 4), 0, h - bh))
            x = int(np.clip(x0 + dx * (t // 4), 0, w - bw))
            grow = (t // 10) % 3  # vary the box shape over time
            m[y:min(h, y + bh + grow), x:min(w, x + bw)] = True
            if bh > 5 and bw > 5:
                m[y, x] = False  # notch so boundaries are not perfect rectangles
            ys, xs = np.nonzero(m)
            boxes[t] = [int(xs.min()), int(ys.min()), int(xs.max() - xs.min() + 1),
                        int(ys.max() - ys.min() + 1)]
        masks.append(m)
    return masks, boxes


def presence_pattern(kind, frames):
    if kind == "always":
        return set(range(frames))
    if kind == "gap":
        a = frames // 3
        return set(range(0, a)) | set(range(a + frames // 4, frames))
    if kind == "quarter_absent":  # exactly 25% absent
        return set(range(frames - frames // 4))
    if kind == "late":
        return set(range(frames // 2 + 3, frames))
    if kind == "sparse":
        return set(range(0, frames, 5))
    if kind == "long_return":
        return set(range(0, 20)) | set(range(140, frames))
    raise ValueError(kind)


TEXTS = [
    ("the cat on the left", "Static"),
    ("the man who picks up a cup then drinks from it slowly", "Dynamic"),
    ("a person in a red jacket walks to the door then opens it and finally leaves the room "
     "without looking back at anyone", "Hybrid"),
    ("small brown dog", "Static"),
    ("the woman running after the ball", "Dynamic"),
    ("the white car parked near the tree on the corner of the quiet street", "Static"),
    ("the bird that lands on the fence before flying away later", "Hybrid"),
    ("a child in blue who sits down", "Dynamic"),
    ("the tall player who catches the ball and passes it to a teammate before the whistle "
     "blows ultimately winning the point", "Hybrid"),
    ("horse", "Static"),
]

VIDEO_PLANS = [
    # id, frames, fps, split, object presence patterns, box objects
    ("vid_a", 60, 2.0, "test", ["always", "gap", "quarter_absent"], [0, 1]),
    ("vid_b", 50, 2.0, "test", ["late", "always"], [1]),
    ("vid_c", 70, 2.0, "valid", ["sparse", "gap", "always", "late"], []),
    ("vid_d", 56, 2.0, "train", ["always", "quarter_absent"], [0]),
    ("vid_e", 260, 5.0, "train", ["long_return", "always", "gap"], [0, 2]),
]
H, W = 24, 32


def build():
    videos = []
    records = []  # per expression: (video, expr, gt masks list)
    text_cursor = 0
    for vid, frames, fps, split, patterns, box_objs in VIDEO_PLANS:
        objects, masks_by_obj, boxes_by_obj = [], {}, {}
        for k, pattern in enumerate(patterns):
            oid = f"obj{k}"
            masks, boxes = moving_box_track(H, W, frames, presence_pattern(pattern, frames))
            masks_by_obj[oid] = masks
            obj = {
                "id": oid,
                "category": ["person", "dog", "car", "bird"][k % 4],
                "masks": {str(t): (rle_encode(m) if m.any() else None)
                          for t, m in enumerate(masks) if m.any() or t % 7 == 0},
            }
            if k in box_objs:
                obj["boxes"] = {str(t): b for t, b in boxes.items()}
                boxes_by_obj[oid] = boxes
            if k == 0:
                obj["attributes"] = {"poc": True, "cm": k % 2 == 0}
            objects.append(obj)
        expressions = []
        for e in range(4):
            text, etype = TEXTS[text_cursor % len(TEXTS)]
            text_cursor += 1
            oid = f"obj{e % len(patterns)}"
            expressions.append({"id": f"exp{e}", "object_id": oid, "text": text, "type": etype})
            records.append((vid, f"exp{e}", oid, text, etype, frames, masks_by_obj))
        videos.append({"id": vid, "fps": fps, "num_frames": frames, "width": W, "height": H,
                       "source_tag": "synthetic", "split": split, "objects": objects,
                       "expressions": expressions, "_boxes": boxes_by_obj,
                       "_masks": masks_by_obj})
    return videos, records


def perturb(kind, gt_masks, other_masks):
    out = []
    for t, m in enumerate(gt_masks):
        if kind == 0:
            p = m.copy()
        elif kind == 1:
            p = np.zeros_like(m)
            p[1:, 2:] = m[:-1, :-2]
        elif kind == 2:
            p = m.copy() if t % 3 else np.zeros_like(m)
            if p.any():
                ys, xs = np.nonzero(p)
                p[ys.max(), :] = False
        elif kind == 3:
            p = m.copy()
            if not p.any() and t % 2 == 0:
                p[2:7, 3:9] = True
        elif kind == 4:
            p = np.zeros_like(m)
        elif kind == 5:
            p = other_masks[t].copy()
        else:
            p = m.copy()
            if p.any():
                flips = RNG.random(p.shape) < 0.05
                p ^= flips
        out.append(p)
    return out


def main():
    if ROOT.exists():
        for name in ["predictions"]:
            shutil.rmtree(ROOT / name, ignore_errors=True)
    (ROOT / "predictions").mkdir(parents=True, exist_ok=True)

    videos, records = build()
    golden = []
    for idx, (vid, eid, oid, text, etype, frames, masks_by_obj) in enumerate(records):
        gt = masks_by_obj[oid]
        others = [o for o in sorted(masks_by_obj) if o != oid]
        pred = perturb(idx % 7, gt, masks_by_obj[others[0]])
        metrics = evaluate(pred, gt, H, W)
        present = sum(1 for m in gt if m.any())
        rate = 1.0 - present / frames
        golden.append({"video_id": vid, "expression_id": eid, "object_id": oid, "type": etype,
                       **metrics, "occlusion_rate": rate,
                       "occlusion_bracket": occlusion_label(rate),
                       "length_bucket": length_label(text), "event_bucket": event_label(text)})
        masks_json = {}
        for t, p in enumerate(pred):
            if p.any():
                masks_json[str(t)] = rle_encode(p)
            elif t % 11 == 0:
                masks_json[str(t)] = None
        doc = {"video_id": vid, "expression_id": eid, "masks": masks_json}
        if idx % 5 == 4:
            path = ROOT / "predictions" / f"flat_{idx:02d}.json"  # resolved by content
        else:
            path = ROOT / "predictions" / vid / f"{eid}.json"
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(doc, separators=(",", ":")))

    golden.sort(key=lambda r: (r["video_id"], r["expression_id"]))

    def aggregate(rows):
        if not rows:
            return {"count": 0, "J": 0.0, "F": 0.0, "JF": 0.0, "tIoU": 0.0, "vIoU": 0.0}
        return {"count": len(rows),
                **{k: math.fsum(r[k] for r in rows) / len(rows)
                   for k in ["J", "F", "JF", "tIoU", "vIoU"]}}

    report = {
        "per_expression": golden,
        "overall": aggregate(golden),
        "per_type": {t: aggregate([r for r in golden if r["type"] == t])
                     for t in ["Static", "Dynamic", "Hybrid"]},
        "buckets": {
            "occlusion": [dict(label=l, **aggregate([r for r in golden if r["occlusion_bracket"] == l]))
                          for l in ["[0, 0.25]", "[0.25, 0.5)", "[0.5, 0.75)", "[0.75, 1]"]],
            "length": [dict(label=l, **aggregate([r for r in golden if r["length_bucket"] == l]))
                       for l in ["<10", "[10, 20]", ">20"]],
            "events": [dict(label=l, **aggregate([r for r in golden if r["event_bucket"] == l]))
                       for l in ["Single-event", "Two-event", "Multi-event"]],
        },
    }
    (ROOT / "golden_report.json").write_text(json.dumps(report, indent=1))

    # ---- statistics ----
    manifest_videos = [{k: v for k, v in video.items() if not k.startswith("_")} for video in videos]
    manifest = {"schema_version": 1, "videos": manifest_videos}
    (ROOT / "manifest.json").write_text(json.dumps(manifest, separators=(",", ":")))

    bin_w = 10.0
    stats = {"num_videos": len(videos), "num_objects": 0, "num_expressions": 0, "num_masks": 0,
             "total_frames": 0}
    durations, obj_durations = [], []
    categories = set()
    type_counts = {"Static": 0, "Dynamic": 0, "Hybrid": 0}
    split_videos, split_expr = {}, {}
    per_video_objects, per_object_desc = {}, {}
    attr_videos = {a: 0 for a in ["poc", "foc", "ov", "lra", "vc", "arc", "sv", "cm", "mb"]}
    for video in videos:
        frames, fps = video["num_frames"], video["fps"]
        stats["total_frames"] += frames
        durations.append(frames / fps)
        split_videos[video["split"]] = split_videos.get(video["split"], 0) + 1
        split_expr[video["split"]] = split_expr.get(video["split"], 0) + len(video["expressions"])
        n_obj = len(video["objects"])
        per_video_objects[n_obj] = per_video_objects.get(n_obj, 0) + 1
        tagged = set()
        for obj in video["objects"]:
            stats["num_objects"] += 1
            categories.add(obj["category"])
            masks = video["_masks"][obj["id"]]
            present = [t for t, m in enumerate(masks) if m.any()]
            stats["num_masks"] += len(present)
            obj_durations.append(len(present) / fps)
            n_desc = sum(1 for e in video["expressions"] if e["object_id"] == obj["id"])
            per_object_desc[n_desc] = per_object_desc.get(n_desc, 0) + 1
            gaps = [b - a - 1 for a, b in zip(present, present[1:])]
            if len(present) < frames:
                tagged.add("ov")
            if any(g > 0 for g in gaps):
                tagged.add("foc")
            if any(g >= 100 for g in gaps):
                tagged.add("lra")
            boxes = video["_boxes"].get(obj["id"])
            if boxes:
                aspects = [b[2] / b[3] for b in boxes.values()]
                areas = [b[2] * b[3] for b in boxes.values()]
                for name, vals in [("arc", aspects), ("sv", areas)]:
                    if max(vals) / min(vals) > 2.0 or min(vals) / max(vals) < 0.5:
                        tagged.add(name)
            for name, value in obj.get("attributes", {}).items():
                if value and name in ("poc", "vc", "cm", "mb"):
                    tagged.add(name)
        for name in tagged:
            attr_videos[name] += 1
        for e in video["expressions"]:
            stats["num_expressions"] += 1
            type_counts[e["type"]] += 1

    def hist(values):
        counts = [0] * (int(math.floor(max(values) / bin_w)) + 1)
        for v in values:
            counts[int(math.floor(v / bin_w))] += 1
        return {"bin_width_s": bin_w, "counts": counts}

    total = 0.0
    for d in durations:  # every duration is a multiple of 0.2, sums are exact here
        total += d
    stats.update({
        "num_categories": len(categories),
        "total_duration_s": total,
        "mean_duration_s": total / len(videos),
        "mean_frames": stats["total_frames"] / len(videos),
        "type_counts": type_counts,
        "type_percent": {k: 100.0 * v / stats["num_expressions"] for k, v in type_counts.items()},
        "split_videos": split_videos,
        "split_expressions": split_expr,
        "video_duration_hist": hist(durations),
        "object_duration_hist": hist(obj_durations),
        "objects_per_video": {str(k): v for k, v in sorted(per_video_objects.items())},
        "descriptions_per_object": {str(k): v for k, v in sorted(per_object_desc.items())},
        "attribute_videos": attr_videos,
    })
    (ROOT / "expected_stats.json").write_text(json.dumps(stats, indent=1))

    # ---- planted schema violations ----
    broken = json.loads(json.dumps(manifest))
    v0 = broken["videos"][0]
    v0["fps"] = 0
    v0["expressions"][1]["object_id"] = "ghost"
    v0["expressions"][2]["type"] = "Temporal"
    v0["objects"][0]["masks"]["3"] = {"size": [H, W], "counts": [5]}
    v0["objects"][1]["masks"]["999"] = None
    broken["videos"][1]["id"] = broken["videos"][0]["id"]
    del broken["videos"][2]["num_frames"]
    broken["videos"][3]["expressions"][0]["text"] = ""
    (ROOT / "broken.json").write_text(json.dumps(broken, separators=(",", ":")))
    (ROOT / "broken_expected.json").write_text(json.dumps([
        "/videos/0/fps",
        "/videos/0/expressions/1/object_id",
        "/videos/0/expressions/2/type",
        "/videos/0/objects/0/masks/3",
        "/videos/0/objects/1/masks/999",
        "/videos/1/id",
        "/videos/2/num_frames",
        "/videos/3/expressions/0/text",
    ], indent=1))

    # ---- selection criteria: one planted failure per video ----
    def tiny_video(vid, frames, fps, patterns):
        objs = []
        for k, pattern in enumerate(patterns):
            present = presence_pattern(pattern, frames)
            m = np.zeros((8, 8), dtype=bool)
            m[2:5, 2:5] = True
            objs.append({"id": f"o{k}", "category": "thing",
                         "masks": {str(t): rle_encode(m) for t in sorted(present)}})
        return {"id": vid, "fps": fps, "num_frames": frames, "width": 8, "height": 8,
                "objects": objs,
                "expressions": [{"id": "e0", "object_id": "o0", "text": "it", "type": "Static"}]}

    criteria = {"schema_version": 1, "videos": [
        tiny_video("ok", 60, 2.0, ["always", "gap", "always"]),
        tiny_video("short", 20, 2.0, ["always", "gap"]),
        tiny_video("exactly20", 40, 2.0, ["always", "gap"]),
        tiny_video("lonely", 60, 2.0, ["gap"]),
        tiny_video("steady", 50, 2.0, ["always", "always"]),
    ]}
    (ROOT / "criteria.json").write_text(json.dumps(criteria, separators=(",", ":")))
    print(f"wrote fixtures to {ROOT}")


if __name__ == "__main__":
    main()
