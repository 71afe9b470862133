import { describe, expect, it } from 'vitest';

import { Emulator, RecordingError, recordingFileContent, taskFromRecording } from '../src/emulator/recorder.js';
import { MenuModelError } from '../src/emulator/menuModel.js';
import { loadMenu } from './helpers.js';

describe('emulator navigation', () => {
  it('starts on the start screen and follows button targets', () => {
    const emu = new Emulator(loadMenu());
    expect(emu.currentScreenId).toBe('HOME');
    emu.click('NAV_HOME');
    expect(emu.currentScreenId).toBe('NAV');
    emu.click('SEARCH_FIELD');
    expect(emu.currentScreenId).toBe('NAV');
    emu.click('LETS_GO');
    expect(emu.currentScreenId).toBe('GUIDANCE');
  });

  it('rejects clicks on elements that are not on the current screen', () => {
    const emu = new Emulator(loadMenu());
    expect(() => emu.click('LETS_GO')).toThrow(MenuModelError);
  });

  it('goHome returns to the start screen', () => {
    const emu = new Emulator(loadMenu());
    emu.click('MEDIA_HOME');
    emu.goHome();
    expect(emu.currentScreenId).toBe('HOME');
  });
});

describe('task recording', () => {
  it('captures armed clicks and resolves the task from first and last', () => {
    const emu = new Emulator(loadMenu());
    emu.arm();
    emu.click('NAV_HOME');
    emu.click('SEARCH_FIELD');
    emu.click('LETS_GO');
    const result = emu.stop();
    expect(result.recording).toEqual(['NAV_HOME', 'SEARCH_FIELD', 'LETS_GO']);
    expect(result.task).toEqual({ start_element: 'NAV_HOME', end_element: 'LETS_GO' });
    expect(emu.armed).toBe(false);
  });

  it('navigates without recording when not armed', () => {
    const emu = new Emulator(loadMenu());
    emu.click('NAV_HOME');
    emu.click('LETS_GO');
    expect(emu.recorded).toEqual([]);
    expect(emu.armed).toBe(false);
    expect(emu.currentScreenId).toBe('GUIDANCE');
  });

  it('refuses to stop with fewer than two clicks and stays armed', () => {
    const emu = new Emulator(loadMenu());
    emu.arm();
    emu.click('NAV_HOME');
    expect(() => emu.stop()).toThrow(RecordingError);
    expect(emu.armed).toBe(true);
    emu.click('LETS_GO');
    expect(emu.stop().task).toEqual({ start_element: 'NAV_HOME', end_element: 'LETS_GO' });
  });

  it('re-arming discards previous clicks', () => {
    const emu = new Emulator(loadMenu());
    emu.arm();
    emu.click('MEDIA_HOME');
    emu.arm();
    expect(emu.recorded).toEqual([]);
  });

  it('cancel drops the recording', () => {
    const emu = new Emulator(loadMenu());
    emu.arm();
    emu.click('NAV_HOME');
    emu.cancel();
    expect(emu.armed).toBe(false);
    expect(emu.recorded).toEqual([]);
  });

  it('serializes the recording file the analysis endpoint accepts', () => {
    const content = recordingFileContent(['NAV_HOME', 'LETS_GO']);
    expect(JSON.parse(content)).toEqual({ recording: ['NAV_HOME', 'LETS_GO'] });
  });

  it('taskFromRecording needs two clicks', () => {
    expect(() => taskFromRecording(['NAV_HOME'])).toThrow(RecordingError);
  });
});
