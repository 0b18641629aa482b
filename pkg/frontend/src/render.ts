// Document rendering as a pure display list: the same (document,
// highlight) input always yields the same ops, so tests can assert
// geometry without a real canvas. Coordinates are document-absolute.

import type { WireColor, WireDocument, WireNode } from "./types.js";

export type DrawOp =
  | { kind: "rect"; x: number; y: number; w: number; h: number; fill: string | null; stroke: string | null; strokeWidth: number }
  | { kind: "text"; x: number; y: number; text: string; font: string; fill: string; maxWidth: number }
  | { kind: "image-placeholder"; x: number; y: number; w: number; h: number }
  | { kind: "outline"; x: number; y: number; w: number; h: number };

export interface RenderResult {
  ops: DrawOp[];
  warnings: string[];
  // bounding box over all frames, for canvas sizing / scroll-into-view
  extent: { x: number; y: number; w: number; h: number };
}

export function cssColor(c: WireColor): string {
  const to255 = (v: number) => Math.round(v * 255);
  return `rgba(${to255(c.r)}, ${to255(c.g)}, ${to255(c.b)}, ${c.a})`;
}

function topFill(node: WireNode): string | null {
  const fill = node.fills[node.fills.length - 1];
  return fill ? cssColor(fill.color) : null;
}

function topStroke(node: WireNode): { color: string; weight: number } | null {
  const stroke = node.strokes[node.strokes.length - 1];
  return stroke ? { color: cssColor(stroke.color), weight: stroke.weight } : null;
}

export function displayList(doc: WireDocument, highlightedNodeId?: string | null): RenderResult {
  const ops: DrawOp[] = [];
  const warnings: string[] = [];
  let outline: DrawOp | null = null;
  let minX = Infinity, minY = Infinity, maxX = -Infinity, maxY = -Infinity;

  const visit = (node: WireNode) => {
    const b = node.bounds;
    minX = Math.min(minX, b.x);
    minY = Math.min(minY, b.y);
    maxX = Math.max(maxX, b.x + b.w);
    maxY = Math.max(maxY, b.y + b.h);
    const stroke = topStroke(node);

    switch (node.type) {
      case "FRAME":
      case "COMPONENT":
      case "RECTANGLE":
        ops.push({
          kind: "rect", x: b.x, y: b.y, w: b.w, h: b.h,
          fill: topFill(node),
          stroke: stroke ? stroke.color : null,
          strokeWidth: stroke ? stroke.weight : 0,
        });
        break;
      case "TEXT": {
        const t = node.text;
        if (t) {
          ops.push({
            kind: "text",
            x: b.x,
            y: b.y + t.fontSize, // baseline inside the box
            text: t.characters,
            font: `${t.fontWeight} ${t.fontSize}px ${t.fontFamily}, sans-serif`,
            fill: topFill(node) ?? "rgba(0, 0, 0, 1)",
            maxWidth: b.w,
          });
        }
        break;
      }
      case "IMAGE":
        ops.push({ kind: "image-placeholder", x: b.x, y: b.y, w: b.w, h: b.h });
        break;
      default:
        // VECTOR and anything the renderer does not shape: draw the box,
        // record a warning so the UI can say what was skipped
        ops.push({
          kind: "rect", x: b.x, y: b.y, w: b.w, h: b.h,
          fill: topFill(node), stroke: null, strokeWidth: 0,
        });
        warnings.push(`node ${node.id} (${node.type}) rendered as a plain box`);
    }

    if (node.id === highlightedNodeId) {
      outline = { kind: "outline", x: b.x, y: b.y, w: b.w, h: b.h };
    }
    for (const child of node.children ?? []) visit(child);
  };

  for (const frame of doc.frames) visit(frame);
  if (outline) ops.push(outline); // always on top
  if (!Number.isFinite(minX)) {
    minX = 0; minY = 0; maxX = 0; maxY = 0;
  }
  return { ops, warnings, extent: { x: minX, y: minY, w: maxX - minX, h: maxY - minY } };
}

export function outlineBounds(result: RenderResult): { x: number; y: number; w: number; h: number } | null {
  const op = result.ops.find((o) => o.kind === "outline");
  return op ? { x: op.x, y: op.y, w: op.w, h: op.h } : null;
}

const PADDING = 24;

export function drawToCanvas(canvas: HTMLCanvasElement, result: RenderResult): void {
  const { extent } = result;
  canvas.width = Math.max(extent.w + PADDING * 2, 100);
  canvas.height = Math.max(extent.h + PADDING * 2, 100);
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  ctx.fillStyle = "#1e2230";
  ctx.fillRect(0, 0, canvas.width, canvas.height);
  ctx.save();
  ctx.translate(PADDING - extent.x, PADDING - extent.y);
  for (const op of result.ops) {
    switch (op.kind) {
      case "rect":
        if (op.fill) {
          ctx.fillStyle = op.fill;
          ctx.fillRect(op.x, op.y, op.w, op.h);
        }
        if (op.stroke && op.strokeWidth > 0) {
          ctx.strokeStyle = op.stroke;
          ctx.lineWidth = op.strokeWidth;
          ctx.strokeRect(op.x, op.y, op.w, op.h);
        }
        break;
      case "text":
        ctx.font = op.font;
        ctx.fillStyle = op.fill;
        ctx.fillText(op.text, op.x, op.y, op.maxWidth);
        break;
      case "image-placeholder":
        ctx.fillStyle = "#3a4157";
        ctx.fillRect(op.x, op.y, op.w, op.h);
        ctx.strokeStyle = "#5a6690";
        ctx.lineWidth = 1;
        ctx.strokeRect(op.x, op.y, op.w, op.h);
        ctx.beginPath();
        ctx.moveTo(op.x, op.y);
        ctx.lineTo(op.x + op.w, op.y + op.h);
        ctx.moveTo(op.x + op.w, op.y);
        ctx.lineTo(op.x, op.y + op.h);
        ctx.stroke();
        break;
      case "outline":
        ctx.strokeStyle = "#66aaff";
        ctx.lineWidth = 3;
        ctx.strokeRect(op.x - 2, op.y - 2, op.w + 4, op.h + 4);
        break;
    }
  }
  ctx.restore();
}
