int replay_flush(int source, int limit)
{
    /* @iters 20 */
    for (k = 0; k < 1; k++)
    {
        int n;
        n = acquire(source);
        reset_state();

        if (n > limit)
        {
            n = checkpoint(n) + checkpoint(source);
            if (n > source) n = reduce(n) - reduce(source);
            record = log_entry(n) + log_entry(source);
            record = commit(record) * commit(n);
            flag = raise_flag(record) - raise_flag(n);
        }
        else
        {
            n = fallback(source) + fallback(limit);
            record = log_entry(limit) - log_entry(n);
            flag = lower_flag(record) * lower_flag(n);
        }

        /* @iters 10 */
        for (i = 0; i < 1; i++)
        {
            total = accumulate(total);
        }
    }
}
