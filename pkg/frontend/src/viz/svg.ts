/**
 * SVG renderers for the three visualizations.
 * Each renderer turns a computed layout into a markup string, so the
 * drawing logic is testable without a DOM. Interactive parts carry data
 * attributes (data-sequence-id, data-path) for event delegation; hover
 * details use native <title> tooltips.
 */

import type { SankeyLayoutResult } from './sankeyLayout.js';
import type { BoxPlotLayoutResult } from './boxPlotLayout.js';
import type { TimelineLayoutResult } from './timelineLayout.js';
import { formatMs } from '../ui/format.js';

export function escapeXml(text: string): string {
  return text
    .replace(/&/g, '&amp;')
    .replace(/</g, '&lt;')
    .replace(/>/g, '&gt;')
    .replace(/"/g, '&quot;')
    .replace(/'/g, '&apos;');
}

function svgOpen(width: number, height: number, className: string): string {
  return (
    `<svg class="${className}" viewBox="0 0 ${width} ${height}" ` +
    `width="100%" preserveAspectRatio="xMinYMin meet" role="img">`
  );
}

/** Sankey diagram: node bars, weighted ribbons colored by mean transition time. */
export function renderSankeySvg(layout: SankeyLayoutResult): string {
  const parts: string[] = [svgOpen(layout.width, layout.height, 'sankey')];
  for (const link of layout.links) {
    const mx = (link.x0 + link.x1) / 2;
    const d = `M ${link.x0} ${link.y0} C ${mx} ${link.y0}, ${mx} ${link.y1}, ${link.x1} ${link.y1}`;
    const tip = `${escapeXml(link.from.element_id)} → ${escapeXml(link.to.element_id)}: ` +
      `${link.weight} sequences, mean transition ${formatMs(link.mean_dt)}`;
    parts.push(
      `<path class="sankey-link" d="${d}" fill="none" stroke="${link.color}" ` +
        `stroke-width="${Math.max(link.thickness, 1)}" stroke-opacity="0.55">` +
        `<title>${tip}</title></path>`,
    );
  }
  for (const node of layout.nodes) {
    const labelX = node.x + node.width + 6;
    const labelY = node.y + node.height / 2 + 4;
    const anchorRight = node.x > layout.width * 0.75;
    parts.push(
      `<g class="sankey-node">` +
        `<rect x="${node.x}" y="${node.y}" width="${node.width}" ` +
        `height="${Math.max(node.height, 1)}">` +
        `<title>${escapeXml(node.label)}: ${node.count} sequences</title></rect>` +
        `<text x="${anchorRight ? node.x - 6 : labelX}" y="${labelY}" ` +
        `text-anchor="${anchorRight ? 'end' : 'start'}">${escapeXml(node.label)}</text>` +
        `</g>`,
    );
  }
  parts.push('</svg>');
  return parts.join('');
}

/** Box plots: one row per flow, dots addressable by sequence id. */
export function renderBoxPlotsSvg(layout: BoxPlotLayoutResult): string {
  const parts: string[] = [svgOpen(layout.width, layout.height, 'boxplots')];
  const axisY = layout.height - 18;
  for (const tick of layout.ticks) {
    parts.push(
      `<line class="tick" x1="${tick.x}" y1="0" x2="${tick.x}" y2="${axisY - 6}"/>` +
        `<text class="tick-label" x="${tick.x}" y="${axisY + 12}" text-anchor="middle">` +
        `${tick.value}</text>`,
    );
  }
  for (const row of layout.rows) {
    parts.push(`<g class="boxplot-row">`);
    parts.push(
      `<text class="row-label" x="8" y="${row.centerY + 4}">` +
        `${escapeXml(row.label)} (n=${row.n})</text>`,
    );
    parts.push(
      `<line class="whisker" x1="${row.whiskerLowX}" y1="${row.centerY}" ` +
        `x2="${row.whiskerHighX}" y2="${row.centerY}"/>`,
      `<line class="whisker-cap" x1="${row.whiskerLowX}" y1="${row.boxY0}" ` +
        `x2="${row.whiskerLowX}" y2="${row.boxY1}"/>`,
      `<line class="whisker-cap" x1="${row.whiskerHighX}" y1="${row.boxY0}" ` +
        `x2="${row.whiskerHighX}" y2="${row.boxY1}"/>`,
      `<rect class="box" x="${row.boxX0}" y="${row.boxY0}" ` +
        `width="${Math.max(row.boxX1 - row.boxX0, 1)}" height="${row.boxY1 - row.boxY0}"/>`,
      `<line class="median" x1="${row.medianX}" y1="${row.boxY0}" ` +
        `x2="${row.medianX}" y2="${row.boxY1}"/>`,
    );
    for (const dot of row.dots) {
      const cls = dot.outlier ? 'dot outlier' : 'dot';
      parts.push(
        `<circle class="${cls}" data-sequence-id="${escapeXml(dot.sequence_id)}" ` +
          `cx="${dot.x.toFixed(2)}" cy="${dot.y.toFixed(2)}" r="5">` +
          `<title>${escapeXml(dot.sequence_id)}: ${dot.value}</title></circle>`,
      );
    }
    parts.push('</g>');
  }
  parts.push('</svg>');
  return parts.join('');
}

/** Timeline: glance lanes with long-glance flags, driving curves, markers. */
export function renderTimelineSvg(layout: TimelineLayoutResult): string {
  const parts: string[] = [svgOpen(layout.width, layout.height, 'timeline')];
  const axisY = layout.height - 16;
  for (const tick of layout.ticks) {
    parts.push(
      `<line class="tick" x1="${tick.x}" y1="0" x2="${tick.x}" y2="${axisY - 4}"/>` +
        `<text class="tick-label" x="${tick.x}" y="${axisY + 10}" text-anchor="middle">` +
        `${tick.label}</text>`,
    );
  }
  for (const lane of layout.lanes) {
    parts.push(
      `<text class="lane-label" x="8" y="${lane.y + lane.height / 2 + 4}">` +
        `${escapeXml(lane.label)}</text>`,
    );
    for (const span of lane.spans) {
      const cls = span.long ? 'glance long' : 'glance';
      const flag = span.long ? ' data-long="1"' : '';
      parts.push(
        `<rect class="${cls} lane-${lane.aoi}"${flag} x="${span.x.toFixed(2)}" y="${lane.y}" ` +
          `width="${span.width.toFixed(2)}" height="${lane.height}">` +
          `<title>${escapeXml(lane.label)}: ${formatMs(span.duration)}` +
          `${span.long ? ' (long glance)' : ''}</title></rect>`,
      );
    }
  }
  for (const s of layout.series) {
    parts.push(
      `<text class="lane-label" x="8" y="${s.y + s.height / 2 + 4}">${escapeXml(s.label)}</text>`,
    );
    if (s.zeroY !== null) {
      parts.push(
        `<line class="zero-line" x1="${layout.plotX0}" y1="${s.zeroY.toFixed(2)}" ` +
          `x2="${layout.width - 16}" y2="${s.zeroY.toFixed(2)}"/>`,
      );
    }
    if (s.points) {
      parts.push(`<polyline class="series series-${s.name}" points="${s.points}" fill="none"/>`);
    }
  }
  for (const marker of layout.markers) {
    parts.push(
      `<g class="marker"><line x1="${marker.x.toFixed(2)}" y1="10" ` +
        `x2="${marker.x.toFixed(2)}" y2="${axisY - 4}"/>` +
        `<circle cx="${marker.x.toFixed(2)}" cy="10" r="4">` +
        `<title>${escapeXml(marker.label)} (${escapeXml(marker.gesture)})</title></circle></g>`,
    );
  }
  parts.push('</svg>');
  return parts.join('');
}
