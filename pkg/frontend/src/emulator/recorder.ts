/**
 * Click-through emulator with task recording.
 * The emulator walks the menu model screen by screen. When armed, every
 * click appends its element id to the recording; stopping yields the
 * recording file content plus the task it resolves to (first and last
 * clicked elements). Clicks while disarmed only navigate.
 */

import type { MenuScreen, UiMenuModel } from './menuModel.js';
import { MenuModelError } from './menuModel.js';
import type { TaskDefinition } from '../api/types.js';

export class RecordingError extends Error {
  constructor(message: string) {
    super(message);
    this.name = 'RecordingError';
  }
}

/** Result of stopping a recording: the file body and the prefilled task. */
export interface RecordingResult {
  recording: string[];
  task: TaskDefinition;
}

/** Resolve a recording to its task: first element to last element. */
export function taskFromRecording(recording: string[]): TaskDefinition {
  if (recording.length < 2) {
    throw new RecordingError('a task needs at least a start and an end click');
  }
  return { start_element: recording[0], end_element: recording[recording.length - 1] };
}

/** Serialize a recording the way the analysis endpoint accepts it. */
export function recordingFileContent(recording: string[]): string {
  return JSON.stringify({ recording }, null, 2);
}

export class Emulator {
  readonly model: UiMenuModel;
  private screenId: string;
  private recording: string[] | null = null;

  constructor(model: UiMenuModel) {
    this.model = model;
    this.screenId = model.start_screen;
  }

  get currentScreenId(): string {
    return this.screenId;
  }

  get currentScreen(): MenuScreen {
    return this.model.screens[this.screenId];
  }

  get armed(): boolean {
    return this.recording !== null;
  }

  /** Clicks captured so far; empty when disarmed. */
  get recorded(): string[] {
    return this.recording ? [...this.recording] : [];
  }

  /** Start a fresh recording. Re-arming discards any previous clicks. */
  arm(): void {
    this.recording = [];
  }

  /** Discard the recording without producing a result. */
  cancel(): void {
    this.recording = null;
  }

  /** Return to the start screen without touching the recording. */
  goHome(): void {
    this.screenId = this.model.start_screen;
  }

  /**
   * Click a button on the current screen.
   * Appends to the recording when armed, then follows the button's
   * target if it has one. Unknown element ids fail loudly: silent
   * misclicks would corrupt recordings.
   */
  click(elementId: string): void {
    const button = this.currentScreen.buttons.find((b) => b.element_id === elementId);
    if (!button) {
      throw new MenuModelError(
        `element "${elementId}" is not on screen "${this.screenId}"`,
      );
    }
    if (this.recording) {
      this.recording.push(elementId);
    }
    if (button.target) {
      this.screenId = button.target;
    }
  }

  /**
   * Stop recording and emit the result.
   * Fewer than two clicks cannot define a task; the recording stays
   * armed in that case so the user can continue clicking.
   */
  stop(): RecordingResult {
    if (!this.recording) {
      throw new RecordingError('recorder is not armed');
    }
    if (this.recording.length < 2) {
      throw new RecordingError('a task needs at least a start and an end click');
    }
    const recording = this.recording;
    this.recording = null;
    return { recording, task: taskFromRecording(recording) };
  }
}
