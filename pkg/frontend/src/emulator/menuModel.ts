/**
 * Declarative menu model behind the click-to-record emulator.
 * The model is a screen graph loaded from JSON: each screen lists its
 * buttons, and a button may navigate to a target screen. Element ids use
 * the same vocabulary as the concept database so recordings resolve
 * directly to analyzable tasks.
 */

export interface MenuButton {
  element_id: string;
  label: string;
  /** Screen to navigate to on click; null or absent means stay. */
  target?: string | null;
}

export interface MenuScreen {
  label: string;
  buttons: MenuButton[];
}

export interface UiMenuModel {
  start_screen: string;
  screens: Record<string, MenuScreen>;
}

export class MenuModelError extends Error {
  constructor(message: string) {
    super(message);
    this.name = 'MenuModelError';
  }
}

/**
 * Validate a parsed JSON value as a menu model.
 * Throws MenuModelError naming the first offending screen or button;
 * a valid model has an existing start screen and only resolvable targets.
 */
export function parseMenuModel(data: unknown): UiMenuModel {
  if (typeof data !== 'object' || data === null) {
    throw new MenuModelError('menu model must be an object');
  }
  const raw = data as Record<string, unknown>;
  if (typeof raw.start_screen !== 'string' || !raw.start_screen) {
    throw new MenuModelError('menu model needs a start_screen id');
  }
  if (typeof raw.screens !== 'object' || raw.screens === null) {
    throw new MenuModelError('menu model needs a screens map');
  }
  const screens: Record<string, MenuScreen> = {};
  for (const [screenId, value] of Object.entries(raw.screens as Record<string, unknown>)) {
    if (typeof value !== 'object' || value === null) {
      throw new MenuModelError(`screen "${screenId}" must be an object`);
    }
    const screen = value as Record<string, unknown>;
    if (typeof screen.label !== 'string') {
      throw new MenuModelError(`screen "${screenId}" needs a label`);
    }
    if (!Array.isArray(screen.buttons)) {
      throw new MenuModelError(`screen "${screenId}" needs a buttons list`);
    }
    const buttons: MenuButton[] = screen.buttons.map((b: unknown, i: number) => {
      if (typeof b !== 'object' || b === null) {
        throw new MenuModelError(`screen "${screenId}" button ${i} must be an object`);
      }
      const btn = b as Record<string, unknown>;
      if (typeof btn.element_id !== 'string' || !btn.element_id) {
        throw new MenuModelError(`screen "${screenId}" button ${i} needs an element_id`);
      }
      if (typeof btn.label !== 'string') {
        throw new MenuModelError(`button "${btn.element_id}" needs a label`);
      }
      const target = btn.target === undefined || btn.target === null ? null : btn.target;
      if (target !== null && typeof target !== 'string') {
        throw new MenuModelError(`button "${btn.element_id}" target must be a screen id`);
      }
      return { element_id: btn.element_id, label: btn.label, target };
    });
    screens[screenId] = { label: screen.label, buttons };
  }
  if (!(raw.start_screen in screens)) {
    throw new MenuModelError(`start screen "${raw.start_screen}" does not exist`);
  }
  for (const [screenId, screen] of Object.entries(screens)) {
    for (const btn of screen.buttons) {
      if (btn.target !== null && btn.target !== undefined && !(btn.target in screens)) {
        throw new MenuModelError(
          `button "${btn.element_id}" on screen "${screenId}" targets unknown screen "${btn.target}"`,
        );
      }
    }
  }
  return { start_screen: raw.start_screen, screens };
}
