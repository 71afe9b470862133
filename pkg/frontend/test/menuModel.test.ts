import { describe, expect, it } from 'vitest';

import { MenuModelError, parseMenuModel } from '../src/emulator/menuModel.js';
import { loadMenu } from './helpers.js';

const minimal = {
  start_screen: 'A',
  screens: {
    A: { label: 'First', buttons: [{ element_id: 'GO_B', label: 'Go', target: 'B' }] },
    B: { label: 'Second', buttons: [] },
  },
};

describe('parseMenuModel', () => {
  it('accepts the shipped menu', () => {
    const model = loadMenu();
    expect(model.start_screen).toBe('HOME');
    expect(Object.keys(model.screens).length).toBeGreaterThanOrEqual(3);
  });

  it('accepts a minimal valid model and normalizes missing targets to null', () => {
    const model = parseMenuModel({
      start_screen: 'A',
      screens: { A: { label: 'First', buttons: [{ element_id: 'X', label: 'x' }] } },
    });
    expect(model.screens.A.buttons[0].target).toBeNull();
  });

  it('rejects a missing start screen', () => {
    expect(() => parseMenuModel({ ...minimal, start_screen: 'NOPE' })).toThrow(
      /start screen "NOPE"/,
    );
  });

  it('rejects a button targeting an unknown screen', () => {
    const broken = {
      start_screen: 'A',
      screens: {
        A: { label: 'First', buttons: [{ element_id: 'GO', label: 'go', target: 'MISSING' }] },
      },
    };
    expect(() => parseMenuModel(broken)).toThrow(/targets unknown screen "MISSING"/);
  });

  it('rejects buttons without element ids', () => {
    const broken = {
      start_screen: 'A',
      screens: { A: { label: 'First', buttons: [{ label: 'nameless' }] } },
    };
    expect(() => parseMenuModel(broken)).toThrow(MenuModelError);
  });

  it('rejects non-object payloads', () => {
    expect(() => parseMenuModel(null)).toThrow(MenuModelError);
    expect(() => parseMenuModel('menu')).toThrow(MenuModelError);
  });
});
