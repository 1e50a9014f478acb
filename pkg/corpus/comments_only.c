/*
 * telemetry batching notes
 *
 * The sampler accumulates raw readings into fixed-width frames
 * before they are handed to the uplink stage.  Frames are sealed
 * once the window closes; late readings roll into the next frame.
 *
 * Sealing order matters: the uplink side assumes frames arrive in
 * monotonically increasing window order and will drop anything
 * that appears to rewind the clock.
 *
 * The retry queue is bounded.  When the bound is hit, the oldest
 * unsent frame is discarded and a gap marker is emitted so the
 * receiver can account for the loss.
 *
 * None of the routines here are reentrant.  Callers serialize
 * access through the scheduler and must not call into the batcher
 * from interrupt context.
 *
 */
