/**
 * Test support: fixture loading and a canned-response service client.
 * Fixtures are real captured HTTP bodies; regenerate them with
 * scripts/capture_fixtures.py against a running toolchain when the wire
 * format changes.
 */

import { readFileSync } from 'node:fs';
import { dirname, join } from 'node:path';
import { fileURLToPath } from 'node:url';

import type {
  AnalysisResponse,
  CompareResponse,
  ElementsResponse,
  KpisResponse,
  SequenceDetailResponse,
} from '../src/api/types.js';
import type { ServiceClient } from '../src/ui/controller.js';
import { ApiError } from '../src/api/client.js';
import type { UiMenuModel } from '../src/emulator/menuModel.js';
import { parseMenuModel } from '../src/emulator/menuModel.js';

const here = dirname(fileURLToPath(import.meta.url));

export function loadFixture<T>(name: string): T {
  const raw = readFileSync(join(here, 'fixtures', name), 'utf-8');
  return JSON.parse(raw) as T;
}

export function loadMenu(): UiMenuModel {
  const raw = readFileSync(join(here, '..', 'menu.json'), 'utf-8');
  return parseMenuModel(JSON.parse(raw));
}

export interface StubCall {
  method: keyof ServiceClient;
  args: unknown[];
}

/**
 * ServiceClient fed from the captured fixtures.
 * Responses can be overridden per method; every call is recorded so tests
 * can assert what the controller asked for.
 */
export class StubClient implements ServiceClient {
  calls: StubCall[] = [];
  kpis: KpisResponse = loadFixture('kpis.json');
  elements: ElementsResponse = loadFixture('elements.json');
  analysis: AnalysisResponse = loadFixture('analysis.json');
  comparison: CompareResponse = loadFixture('compare.json');
  detail: SequenceDetailResponse = loadFixture('sequence_long_glance.json');

  /** When set, the named method rejects with this error once. */
  failures: Partial<Record<keyof ServiceClient, ApiError>> = {};

  /** Optional per-call hook so tests can delay or reshape responses. */
  onCall: ((call: StubCall) => void) | null = null;

  private take(method: keyof ServiceClient, args: unknown[]): ApiError | null {
    const call: StubCall = { method, args };
    this.calls.push(call);
    this.onCall?.(call);
    const failure = this.failures[method];
    if (failure) {
      delete this.failures[method];
      return failure;
    }
    return null;
  }

  callsTo(method: keyof ServiceClient): StubCall[] {
    return this.calls.filter((c) => c.method === method);
  }

  async getKpis(): Promise<KpisResponse> {
    const fail = this.take('getKpis', []);
    if (fail) throw fail;
    return this.kpis;
  }

  async getElements(): Promise<ElementsResponse> {
    const fail = this.take('getElements', []);
    if (fail) throw fail;
    return this.elements;
  }

  async analyze(req: unknown): Promise<AnalysisResponse> {
    const fail = this.take('analyze', [req]);
    if (fail) throw fail;
    return this.analysis;
  }

  async compare(req: unknown): Promise<CompareResponse> {
    const fail = this.take('compare', [req]);
    if (fail) throw fail;
    return this.comparison;
  }

  async getSequence(sequenceId: string, margin?: number): Promise<SequenceDetailResponse> {
    const fail = this.take('getSequence', [sequenceId, margin]);
    if (fail) throw fail;
    if (sequenceId !== this.detail.sequence_id) {
      throw new ApiError(404, `unknown sequence "${sequenceId}"`);
    }
    return this.detail;
  }
}
