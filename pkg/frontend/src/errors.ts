/** Typed failures, each carrying the CLI exit code it maps to. */

export class PlotsError extends Error {
  readonly exitCode: number;

  constructor(message: string, exitCode: number) {
    super(message);
    this.name = new.target.name;
    this.exitCode = exitCode;
  }
}

/** A referenced file is missing or unreadable. */
export class InputError extends PlotsError {
  constructor(message: string) {
    super(message, 2);
  }
}

/** A CSV or plot spec does not match the expected schema. */
export class SchemaError extends PlotsError {
  constructor(message: string) {
    super(message, 3);
  }
}

/** Bad command-line arguments. */
export class ArgError extends PlotsError {
  constructor(message: string) {
    super(message, 5);
  }
}
